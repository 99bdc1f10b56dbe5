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

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "furuta/rng.hpp"
#include "furuta/state.hpp"

namespace furuta {

/// Wrap-free angle representation [cos theta, sin theta, cos alpha, sin alpha].
struct AngleEncoding {
    double c_theta = 1.0;
    double s_theta = 0.0;
    double c_alpha = 1.0;
    double s_alpha = 0.0;
};

struct DegenerateEncoding : std::runtime_error {
    using std::runtime_error::runtime_error;
};

AngleEncoding encode_angles(double theta, double alpha);

/// Inverse of encode_angles via atan2 per pair; accepts unnormalized pairs as
/// long as their norm exceeds 1e-6 (throws DegenerateEncoding below that).
/// Angles come back in (-pi, pi].
std::pair<double, double> decode_angles(const AngleEncoding& e);

/// Finite-difference + single-pole low-pass velocity estimator.
/// Before the first sample both velocities read zero.
struct VelocityFilterState {
    double prev_theta = 0.0;  ///< rad, wrapped
    double prev_alpha = 0.0;  ///< rad, wrapped
    double v_theta = 0.0;     ///< filtered, rad/s
    double v_alpha = 0.0;     ///< filtered, rad/s
    bool initialized = false;
};

struct VelocityEstimate {
    VelocityFilterState next;
    double v_theta = 0.0;
    double v_alpha = 0.0;
};

/// raw = wrapped(pos - prev)/dt, then v += a*(raw - v) with smoothing
/// a in (0, 1] (a = 1 is pure finite differences). The wrap on the position
/// difference keeps a 179 -> -179 degree crossing at +2 degrees rather than
/// -358. Requires dt > 0.
VelocityEstimate velocity_step(const VelocityFilterState& f, double theta, double alpha,
                               double dt, double a);

/// Angle measurement noise: independent zero-mean Gaussians of std sigma_deg
/// on each angle. Velocities are never corrupted directly; they inherit noise
/// through velocity_step on the corrupted angles.
struct NoiseModel {
    double sigma_deg = 0.0;
    std::uint64_t seed = 0;
};

/// Returns wrapped (theta_meas, alpha_meas). Draws one Gaussian pair per call
/// even at sigma = 0 so the stream position is independent of sigma.
std::pair<double, double> corrupt_measurement(const State& s, const NoiseModel& n,
                                              SplitMix64& rng);

}  // namespace furuta
