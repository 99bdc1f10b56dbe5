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

#include "furuta/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace furuta {

StateDerivative dynamics_derivative(const State& s, double u, const PendulumParams& p) {
    if (!is_finite(s) || !std::isfinite(u)) throw IntegrationBlowup(s);
    const double sa = std::sin(s.alpha);
    const double ca = std::cos(s.alpha);
    const double td = s.theta_dot;
    const double ad = s.alpha_dot;

    const double arm_inertia = p.J_a + p.m_p * p.L_a * p.L_a;
    const double coupling = p.m_p * p.L_a * p.l;  // off-diagonal magnitude

    // M(alpha) = [ arm_inertia + J_p sa^2,  -coupling ca ]
    //            [ -coupling ca,             J_p         ]
    const double m00 = arm_inertia + p.J_p * sa * sa;
    const double m01 = -coupling * ca;
    const double m11 = p.J_p;
    const double det = m00 * m11 - m01 * m01;
    if (!(det > 0.0))
        throw std::invalid_argument("dynamics: mass matrix determinant <= 0; invalid parameters");

    const double tau = p.k_u * u;
    const double f_theta =
        tau - p.b_a * td - 2.0 * p.J_p * sa * ca * td * ad - coupling * sa * ad * ad;
    const double f_alpha = -p.b_p * ad + p.J_p * sa * ca * td * td + p.m_p * p.g * p.l * sa;

    StateDerivative d;
    d.d_theta = td;
    d.d_alpha = ad;
    d.d_theta_dot = (m11 * f_theta - m01 * f_alpha) / det;
    d.d_alpha_dot = (m00 * f_alpha - m01 * f_theta) / det;
    return d;
}

namespace {

State axpy(const State& s, double h, const StateDerivative& d) {
    return {s.theta + h * d.d_theta, s.alpha + h * d.d_alpha, s.theta_dot + h * d.d_theta_dot,
            s.alpha_dot + h * d.d_alpha_dot};
}

}  // namespace

State step(const State& s, double u, double dt, const PendulumParams& p) {
    if (!(dt > 0.0 && dt <= 0.05))
        throw std::invalid_argument("step: dt must be in (0, 0.05]");
    const StateDerivative k1 = dynamics_derivative(s, u, p);
    const StateDerivative k2 = dynamics_derivative(axpy(s, 0.5 * dt, k1), u, p);
    const StateDerivative k3 = dynamics_derivative(axpy(s, 0.5 * dt, k2), u, p);
    const StateDerivative k4 = dynamics_derivative(axpy(s, dt, k3), u, p);
    const State next{
        s.theta + dt / 6.0 * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta),
        s.alpha + dt / 6.0 * (k1.d_alpha + 2.0 * k2.d_alpha + 2.0 * k3.d_alpha + k4.d_alpha),
        s.theta_dot + dt / 6.0 * (k1.d_theta_dot + 2.0 * k2.d_theta_dot + 2.0 * k3.d_theta_dot +
                                  k4.d_theta_dot),
        s.alpha_dot + dt / 6.0 * (k1.d_alpha_dot + 2.0 * k2.d_alpha_dot + 2.0 * k3.d_alpha_dot +
                                  k4.d_alpha_dot)};
    if (!is_finite(next)) throw IntegrationBlowup(next);
    return next;
}

double total_energy(const State& s, const PendulumParams& p) {
    return 0.5 * p.J_p * s.alpha_dot * s.alpha_dot + p.m_p * p.g * p.l * std::cos(s.alpha);
}

double upright_energy(const PendulumParams& p) {
    return p.m_p * p.g * p.l;
}

double system_energy(const State& s, const PendulumParams& p) {
    const double sa = std::sin(s.alpha);
    const double ca = std::cos(s.alpha);
    const double arm_inertia = p.J_a + p.m_p * p.L_a * p.L_a;
    const double kinetic = 0.5 * (arm_inertia + p.J_p * sa * sa) * s.theta_dot * s.theta_dot -
                           p.m_p * p.L_a * p.l * ca * s.theta_dot * s.alpha_dot +
                           0.5 * p.J_p * s.alpha_dot * s.alpha_dot;
    return kinetic + p.m_p * p.g * p.l * ca;
}

LinearModel linearize(const PendulumParams& p, const State& x0, double u0, double h) {
    if (!(h >= 1e-7 && h <= 1e-3))
        throw std::invalid_argument("linearize: h must be in [1e-7, 1e-3]");

    const auto column = [&](const StateDerivative& plus, const StateDerivative& minus) {
        return Vec4{{(plus.d_theta - minus.d_theta) / (2.0 * h),
                     (plus.d_alpha - minus.d_alpha) / (2.0 * h),
                     (plus.d_theta_dot - minus.d_theta_dot) / (2.0 * h),
                     (plus.d_alpha_dot - minus.d_alpha_dot) / (2.0 * h)}};
    };

    LinearModel m;
    for (int j = 0; j < 4; ++j) {
        State xp = x0, xm = x0;
        double* fields_p[4] = {&xp.theta, &xp.alpha, &xp.theta_dot, &xp.alpha_dot};
        double* fields_m[4] = {&xm.theta, &xm.alpha, &xm.theta_dot, &xm.alpha_dot};
        *fields_p[j] += h;
        *fields_m[j] -= h;
        const Vec4 col = column(dynamics_derivative(xp, u0, p), dynamics_derivative(xm, u0, p));
        for (int i = 0; i < 4; ++i) m.A(i, j) = col[i];
    }
    m.B = column(dynamics_derivative(x0, u0 + h, p), dynamics_derivative(x0, u0 - h, p));

    if (!all_finite(m.A) || !all_finite(m.B))
        throw std::runtime_error("linearize: non-finite Jacobian entries");
    return m;
}

}  // namespace furuta
