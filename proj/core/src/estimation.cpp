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

#include "furuta/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace furuta {

AngleEncoding encode_angles(double theta, double alpha) {
    if (!std::isfinite(theta) || !std::isfinite(alpha))
        throw std::invalid_argument("encode_angles: non-finite angle");
    return {std::cos(theta), std::sin(theta), std::cos(alpha), std::sin(alpha)};
}

std::pair<double, double> decode_angles(const AngleEncoding& e) {
    const double n_theta = std::hypot(e.c_theta, e.s_theta);
    const double n_alpha = std::hypot(e.c_alpha, e.s_alpha);
    if (n_theta <= 1e-6 || n_alpha <= 1e-6)
        throw DegenerateEncoding("decode_angles: encoding pair norm below 1e-6");
    const double theta = wrap_angle(std::atan2(e.s_theta, e.c_theta));
    const double alpha = wrap_angle(std::atan2(e.s_alpha, e.c_alpha));
    return {theta, alpha};
}

VelocityEstimate velocity_step(const VelocityFilterState& f, double theta, double alpha,
                               double dt, double a) {
    if (!(dt > 0.0)) throw std::invalid_argument("velocity_step: dt must be > 0");
    if (!(a > 0.0 && a <= 1.0))
        throw std::invalid_argument("velocity_step: smoothing must be in (0, 1]");

    VelocityEstimate out;
    out.next = f;
    out.next.prev_theta = wrap_angle(theta);
    out.next.prev_alpha = wrap_angle(alpha);
    if (!f.initialized) {
        out.next.initialized = true;
        return out;  // velocities read zero before the first difference
    }
    const double raw_theta = wrap_angle(theta - f.prev_theta) / dt;
    const double raw_alpha = wrap_angle(alpha - f.prev_alpha) / dt;
    out.next.v_theta = f.v_theta + a * (raw_theta - f.v_theta);
    out.next.v_alpha = f.v_alpha + a * (raw_alpha - f.v_alpha);
    out.v_theta = out.next.v_theta;
    out.v_alpha = out.next.v_alpha;
    return out;
}

std::pair<double, double> corrupt_measurement(const State& s, const NoiseModel& n,
                                              SplitMix64& rng) {
    const auto [z_theta, z_alpha] = gaussian_pair(rng);
    const double sigma = deg_to_rad(n.sigma_deg);
    return {wrap_angle(s.theta + sigma * z_theta), wrap_angle(s.alpha + sigma * z_alpha)};
}

}  // namespace furuta
