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

#include <utility>

#include "furuta/dynamics.hpp"
#include "furuta/linalg.hpp"
#include "furuta/params.hpp"
#include "furuta/state.hpp"

namespace furuta {

/// clamp(u, -u_max, +u_max). Requires u_max > 0.
double saturate(double u, double u_max);

/// Energy-pumping swing-up law u = mu * (E0 - E) * sign(alpha_dot * cos(alpha))
/// with sign(0) = 0. Bang-bang through the sign term; the output is NOT
/// saturated here.
double swing_up(const State& s, double mu, const PendulumParams& p);

/// PID controller state. Gains travel with the state so the controller is a
/// self-contained value; integral is clamped to +/- integral_limit (anti-windup).
struct PidState {
    double k_p = 0.0;
    double k_i = 0.0;
    double k_d = 0.0;
    double integral_limit = 10.0;  ///< rad s
    double integral = 0.0;         ///< accumulated error, rad s
    double prev_error = 0.0;       ///< rad
};

/// u = k_p e + k_i * integral + k_d (e - e_prev) / dt. Requires dt > 0.
std::pair<double, PidState> pid_step(const PidState& pid, double error, double dt);

/// State feedback u = -K (wrapped(x) - wrapped(x_ref)); angle errors are
/// wrapped into (-pi, pi], velocity errors are plain differences.
double lqr_control(const Vec4& K, const State& x, const State& x_ref);

enum class HybridMode { SwingUp, Balance };

struct HybridConfig {
    Vec4 K;                       ///< balance gain
    double mu = 0.0;              ///< swing-up gain, V/J
    double u_max = 10.0;          ///< saturation, V
    double alpha_catch = deg_to_rad(15.0);    ///< enter Balance below this |alpha|
    double alpha_release = deg_to_rad(25.0);  ///< leave Balance above this |alpha|
    double omega_catch = 5.0;     ///< rad/s, max |alpha_dot| to enter Balance
    double kick_voltage = 5.0;    ///< V, applied at the hanging deadlock
    double kick_omega_eps = 1e-3;            ///< rad/s
    double kick_alpha_min = deg_to_rad(170.0);
};

/// Mode and deadlock-kick bookkeeping threaded through hybrid_policy calls.
struct HybridState {
    HybridMode mode = HybridMode::SwingUp;
    double kick_sign = 1.0;
    bool was_deadlocked = false;
};

/// Mode-switching swing-up / balance policy. Balance engages when
/// |wrapped alpha| < alpha_catch and |alpha_dot| < omega_catch; once balancing
/// it only releases above alpha_release (hysteresis). The swing-up branch
/// applies a fixed kick at the hanging deadlock where the sign law is exactly
/// zero, alternating direction on each new deadlock entry. Output saturated.
std::pair<double, HybridState> hybrid_policy(const State& s, const HybridConfig& cfg,
                                             const HybridState& prev,
                                             const PendulumParams& p);

}  // namespace furuta
