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

#include "furuta/linear_model.hpp"
#include "furuta/params.hpp"
#include "furuta/state.hpp"

namespace furuta {

/// Time derivative of the pendulum state.
struct StateDerivative {
    double d_theta = 0.0;      ///< rad/s
    double d_alpha = 0.0;      ///< rad/s
    double d_theta_dot = 0.0;  ///< rad/s^2
    double d_alpha_dot = 0.0;  ///< rad/s^2
};

/// Raised when a fixed step leaves the finite domain; carries the state the
/// integrator produced so callers can report where the run blew up.
struct IntegrationBlowup : std::runtime_error {
    State state;
    explicit IntegrationBlowup(const State& s)
        : std::runtime_error("integration produced a non-finite state"), state(s) {}
};

/// Continuous-time equations of motion.
///
/// Standard two-degree-of-freedom rotary-pendulum Lagrangian dynamics with
/// full inertial coupling, viscous damping on both joints and arm torque
/// tau = k_u * u. With a = J_a + m_p L_a^2, c = m_p L_a l, the mass matrix is
///
///   M(alpha) = [ a + J_p sin^2(alpha)   -c cos(alpha) ]
///              [ -c cos(alpha)           J_p          ]
///
/// and the right-hand sides are
///
///   f_theta = k_u u - b_a theta_dot
///             - 2 J_p sin(alpha) cos(alpha) theta_dot alpha_dot
///             - c sin(alpha) alpha_dot^2
///   f_alpha = -b_p alpha_dot + J_p sin(alpha) cos(alpha) theta_dot^2
///             + m_p g l sin(alpha).
///
/// The full derivation is in docs/model.md. The 2x2 mass matrix is inverted
/// analytically; a non-positive determinant throws std::invalid_argument.
StateDerivative dynamics_derivative(const State& s, double u, const PendulumParams& p);

/// One classical RK4 step with the input held constant (zero-order hold).
/// Requires 0 < dt <= 0.05. Throws IntegrationBlowup on a non-finite result.
State step(const State& s, double u, double dt, const PendulumParams& p);

/// Pendulum-only mechanical energy E = 1/2 J_p alpha_dot^2 + m_p g l cos(alpha),
/// potential zero at pivot height (upright = +m g l, hanging = -m g l).
double total_energy(const State& s, const PendulumParams& p);

/// Pendulum potential energy at the upright equilibrium, m_p * g * l.
double upright_energy(const PendulumParams& p);

/// Mechanical energy of the full two-body system (arm + pendulum), used by
/// the passivity checks. Not the quantity regulated by the swing-up law.
double system_energy(const State& s, const PendulumParams& p);

/// Jacobian (A, B) of dynamics_derivative at (x0, u0) by central finite
/// differences with step h in [1e-7, 1e-3]. Throws std::invalid_argument on a
/// bad h and std::runtime_error if any entry comes out non-finite.
LinearModel linearize(const PendulumParams& p, const State& x0 = upright_rest(),
                      double u0 = 0.0, double h = 1e-5);

}  // namespace furuta
