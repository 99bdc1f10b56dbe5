/*
 Copyright 2026 The Furuta Bench Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <string>

namespace furuta {

/// Physical parameters of the rotary pendulum, SI units.
///
/// The pendulum inertia J_p is taken about its pivot (so a uniform rod of
/// mass m and full length 2l has J_p = (4/3) m l^2). The motor is modeled
/// as a lumped linear gain k_u from command voltage to arm torque; back-EMF
/// damping is folded into b_a.
struct PendulumParams {
    double m_p = 0.0;  ///< pendulum mass, kg
    double l = 0.0;    ///< pivot to pendulum center of mass, m
    double L_a = 0.0;  ///< arm length (axis to pendulum pivot), m
    double J_a = 0.0;  ///< arm inertia about the motor axis, kg m^2
    double J_p = 0.0;  ///< pendulum inertia about its pivot, kg m^2
    double b_a = 0.0;  ///< arm viscous damping, N m s
    double b_p = 0.0;  ///< pendulum viscous damping, N m s
    double k_u = 0.0;  ///< input gain, N m per volt
    double g = 9.81;   ///< gravity, m/s^2
};

/// Throws std::invalid_argument if a parameter violates its sign constraint
/// (masses, lengths, inertias, gain strictly positive; damping >= 0; g > 0).
void validate(const PendulumParams& p);

/// Rough textbook-scale starting point for calibration; not a calibrated set.
PendulumParams nominal_params();

/// A parameter file: the physical parameters plus a free-form provenance note.
struct ParamsFile {
    PendulumParams params;
    std::string provenance;
};

ParamsFile load_params(const std::string& path);

/// Writes the JSON parameter file (one key per field plus "provenance").
/// `extra_json` may carry an additional serialized object merged into the
/// document (used by calibration to record per-entry fit errors).
void save_params(const ParamsFile& file, const std::string& path,
                 const std::string& extra_json = "");

}  // namespace furuta
