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

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "furuta/linalg.hpp"
#include "furuta/linear_model.hpp"

namespace furuta {

struct SolverError : std::runtime_error {
    double residual;
    SolverError(const std::string& what, double res)
        : std::runtime_error(what + " (residual " + std::to_string(res) + ")"), residual(res) {}
};

/// Frobenius norm of A'P + PA - P b b' P / r + Q.
template <int N>
double care_residual(const Mat<N>& A, const Vec<N>& b, const Mat<N>& Q, double r,
                     const Mat<N>& P);

/// Stabilizing solution of the continuous algebraic Riccati equation
///   A'P + PA - P b r^-1 b' P + Q = 0
/// for a single input (r scalar > 0).
///
/// The solution is reached by integrating the matrix differential Riccati
/// flow dP/ds = A'P + PA - P b b' P / r + Q from P(0) = Q (adaptive RK4 with
/// step doubling) until the feedback it induces is stabilizing, then polished
/// by Newton-Kleinman iterations (each a 16x16 Lyapunov solve) down to the
/// algebraic residual. Throws SolverError if the residual cannot be brought
/// below 1e-8 or the result is not stabilizing.
template <int N>
Mat<N> solve_care(const Mat<N>& A, const Vec<N>& b, const Mat<N>& Q, double r);

/// K = r^-1 b' P, returned as a row vector.
template <int N>
Vec<N> lqr_gain(const Vec<N>& b, const Mat<N>& P, double r);

/// Solves A'X + XA + W = 0 for X (Kronecker-vectorized dense solve).
/// Requires A Hurwitz for a unique symmetric solution.
template <int N>
Mat<N> lyapunov_solve(const Mat<N>& A, const Mat<N>& W);

/// A complete state-feedback design: weights, Riccati solution, gain, and the
/// closed-loop certificate that goes with them.
struct LqrDesign {
    Mat4 Q;
    double R = 1.0;
    Mat4 P;
    Vec4 K;
    double residual = 0.0;                          ///< CARE Frobenius residual
    std::array<std::complex<double>, 4> closed_loop_eigs{};  ///< eig(A - B K)
};

/// Solves the CARE for the given model and weights and verifies the design:
/// P symmetric PSD, residual < 1e-8, A - B K Hurwitz. Throws SolverError on
/// any violated certificate.
LqrDesign design_lqr(const LinearModel& model, const Mat4& Q, double R);

}  // namespace furuta
