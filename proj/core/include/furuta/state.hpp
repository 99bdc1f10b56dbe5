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

#include <cmath>
#include <numbers>

#include "furuta/linalg.hpp"

namespace furuta {

/// Pendulum state x = [theta, alpha, theta_dot, alpha_dot].
/// theta is the arm angle, alpha the pendulum angle with alpha = 0 upright.
/// Angles are kept unwrapped; use wrapped() for the (-pi, pi] view.
struct State {
    double theta = 0.0;      ///< arm angle, rad
    double alpha = 0.0;      ///< pendulum angle, rad (0 = upright)
    double theta_dot = 0.0;  ///< rad/s
    double alpha_dot = 0.0;  ///< rad/s
};

/// Maps an angle into (-pi, pi].
inline double wrap_angle(double x) {
    double w = std::remainder(x, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
}

inline State wrapped(const State& s) {
    return {wrap_angle(s.theta), wrap_angle(s.alpha), s.theta_dot, s.alpha_dot};
}

inline bool is_finite(const State& s) {
    return std::isfinite(s.theta) && std::isfinite(s.alpha) && std::isfinite(s.theta_dot) &&
           std::isfinite(s.alpha_dot);
}

inline Vec4 to_vec(const State& s) {
    return Vec4{{s.theta, s.alpha, s.theta_dot, s.alpha_dot}};
}

inline State hanging_rest() {
    return {0.0, std::numbers::pi, 0.0, 0.0};
}

inline State upright_rest() {
    return {};
}

constexpr double deg_to_rad(double deg) {
    return deg * std::numbers::pi / 180.0;
}

constexpr double rad_to_deg(double rad) {
    return rad * 180.0 / std::numbers::pi;
}

}  // namespace furuta
