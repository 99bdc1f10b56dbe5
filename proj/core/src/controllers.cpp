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

#include "furuta/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace furuta {

namespace {

double sign(double x) {
    return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
}

}  // namespace

double saturate(double u, double u_max) {
    if (!(u_max > 0.0)) throw std::invalid_argument("saturate: u_max must be > 0");
    return std::clamp(u, -u_max, u_max);
}

double swing_up(const State& s, double mu, const PendulumParams& p) {
    const double energy_error = upright_energy(p) - total_energy(s, p);
    return mu * energy_error * sign(s.alpha_dot * std::cos(s.alpha));
}

std::pair<double, PidState> pid_step(const PidState& pid, double error, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("pid_step: dt must be > 0");
    PidState next = pid;
    next.integral = std::clamp(pid.integral + error * dt, -pid.integral_limit,
                               pid.integral_limit);
    next.prev_error = error;
    const double u = pid.k_p * error + pid.k_i * next.integral +
                     pid.k_d * (error - pid.prev_error) / dt;
    return {u, next};
}

double lqr_control(const Vec4& K, const State& x, const State& x_ref) {
    const Vec4 e{{wrap_angle(x.theta - x_ref.theta), wrap_angle(x.alpha - x_ref.alpha),
                  x.theta_dot - x_ref.theta_dot, x.alpha_dot - x_ref.alpha_dot}};
    return -dot(K, e);
}

std::pair<double, HybridState> hybrid_policy(const State& s, const HybridConfig& cfg,
                                             const HybridState& prev,
                                             const PendulumParams& p) {
    const double a = std::abs(wrap_angle(s.alpha));
    const double w = std::abs(s.alpha_dot);

    HybridState next = prev;
    if (prev.mode == HybridMode::Balance) {
        if (a > cfg.alpha_release) next.mode = HybridMode::SwingUp;
    } else {
        if (a < cfg.alpha_catch && w < cfg.omega_catch) next.mode = HybridMode::Balance;
    }

    double u;
    if (next.mode == HybridMode::Balance) {
        u = lqr_control(cfg.K, s, State{});
        next.was_deadlocked = false;
    } else {
        const bool deadlocked = w < cfg.kick_omega_eps && a > cfg.kick_alpha_min;
        if (deadlocked) {
            // The sign law is exactly zero at hanging rest; a fixed kick whose
            // direction alternates on each fresh deadlock breaks the symmetry.
            if (!prev.was_deadlocked) next.kick_sign = -prev.kick_sign;
            u = next.kick_sign * cfg.kick_voltage;
        } else {
            u = swing_up(s, cfg.mu, p);
        }
        next.was_deadlocked = deadlocked;
    }
    return {saturate(u, cfg.u_max), next};
}

}  // namespace furuta
