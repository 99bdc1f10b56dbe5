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

#include "furuta/care.hpp"

#include <algorithm>
#include <cmath>

#include "furuta/stability.hpp"

namespace furuta {

namespace {

/// Right-hand side of the Riccati flow dP/ds = A'P + PA - P b b' P / r + Q.
template <int N>
Mat<N> riccati_rhs(const Mat<N>& At, const Mat<N>& A, const Vec<N>& b, const Mat<N>& Q,
                   double r, const Mat<N>& P) {
    const Vec<N> s = P * b;  // P is symmetric, so P b == (b' P)'
    Mat<N> rhs = At * P + P * A + Q - (1.0 / r) * outer(s, s);
    return symmetrize(rhs);
}

template <int N>
Mat<N> rk4_riccati(const Mat<N>& At, const Mat<N>& A, const Vec<N>& b, const Mat<N>& Q,
                   double r, const Mat<N>& P, double h) {
    const Mat<N> k1 = riccati_rhs(At, A, b, Q, r, P);
    const Mat<N> k2 = riccati_rhs(At, A, b, Q, r, P + (0.5 * h) * k1);
    const Mat<N> k3 = riccati_rhs(At, A, b, Q, r, P + (0.5 * h) * k2);
    const Mat<N> k4 = riccati_rhs(At, A, b, Q, r, P + h * k3);
    return symmetrize(P + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

template <int N>
Mat<N> closed_loop(const Mat<N>& A, const Vec<N>& b, const Vec<N>& K) {
    return A - outer(b, K);
}

}  // namespace

template <int N>
double care_residual(const Mat<N>& A, const Vec<N>& b, const Mat<N>& Q, double r,
                     const Mat<N>& P) {
    const Vec<N> s = P * b;
    return frobenius_norm(transpose(A) * P + P * A + Q - (1.0 / r) * outer(s, s));
}

template <int N>
Mat<N> lyapunov_solve(const Mat<N>& A, const Mat<N>& W) {
    // A'X + XA = -W, vectorized row-major: index (i,j) -> i*N + j.
    constexpr int NN = N * N;
    Mat<NN> system;
    Vec<NN> rhs;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const int row = i * N + j;
            rhs[row] = -W(i, j);
            for (int k = 0; k < N; ++k) {
                system(row, k * N + j) += A(k, i);  // (A'X) term
                system(row, i * N + k) += A(k, j);  // (XA) term
            }
        }
    const Vec<NN> x = solve<NN>(system, rhs);
    Mat<N> X;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) X(i, j) = x[i * N + j];
    return symmetrize(X);
}

template <int N>
Vec<N> lqr_gain(const Vec<N>& b, const Mat<N>& P, double r) {
    return (1.0 / r) * (transpose(P) * b);
}

template <int N>
Mat<N> solve_care(const Mat<N>& A, const Vec<N>& b, const Mat<N>& Q, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("solve_care: r must be > 0");
    if (frobenius_norm(Q - transpose(Q)) > 1e-10 * (1.0 + frobenius_norm(Q)))
        throw std::invalid_argument("solve_care: Q must be symmetric");
    for (double ev : symmetric_eigenvalues(Q))
        if (ev < -1e-10 * (1.0 + frobenius_norm(Q)))
            throw std::invalid_argument("solve_care: Q must be positive semidefinite");

    const Mat<N> At = transpose(A);
    Mat<N> P = symmetrize(Q);

    // Phase 1: integrate the Riccati flow from P(0) = Q with step doubling
    // until the induced feedback stabilizes A - b K (or the flow itself
    // settles). The flow converges to the stabilizing solution for
    // stabilizable, detectable problems.
    const double flow_tol = 1e-12;
    const double newton_gate = 1e-2;
    double h = 1e-6;
    double s_elapsed = 0.0;
    const double s_max = 400.0;
    bool newton_ready = false;
    while (s_elapsed < s_max) {
        const Mat<N> full = rk4_riccati(At, A, b, Q, r, P, h);
        const Mat<N> half = rk4_riccati(At, A, b, Q, r,
                                        rk4_riccati(At, A, b, Q, r, P, 0.5 * h), 0.5 * h);
        const double err = frobenius_norm(full - half);
        const double tol = 1e-10 * (1.0 + frobenius_norm(half));
        if (err > tol && h > 1e-12) {
            h *= 0.5;
            continue;
        }
        P = half;
        s_elapsed += h;
        if (err < 0.1 * tol) h = std::min(h * 1.6, 0.25);

        const double rate = frobenius_norm(riccati_rhs(At, A, b, Q, r, P));
        if (rate < newton_gate * (1.0 + frobenius_norm(P))) {
            if (is_hurwitz<N>(closed_loop(A, b, lqr_gain(b, P, r)))) {
                newton_ready = true;
                break;
            }
        }
        if (rate < flow_tol) break;
    }

    // Phase 2: Newton-Kleinman polish. Each step solves the Lyapunov equation
    // of the current closed loop; quadratic convergence to machine residual.
    if (newton_ready || is_hurwitz<N>(closed_loop(A, b, lqr_gain(b, P, r)))) {
        double best = care_residual(A, b, Q, r, P);
        for (int it = 0; it < 60 && best > 1e-14 * (1.0 + frobenius_norm(P)); ++it) {
            try {
                const Vec<N> K = lqr_gain(b, P, r);
                const Mat<N> Acl = closed_loop(A, b, K);
                if (!is_hurwitz<N>(Acl, 0.0)) break;
                const Mat<N> W = Q + r * outer(K, K);
                const Mat<N> next = lyapunov_solve(Acl, W);
                const double res = care_residual(A, b, Q, r, next);
                if (!all_finite(next) || res > best) break;
                P = next;
                best = res;
            } catch (const std::runtime_error&) {
                break;  // singular Lyapunov system; keep the best P so far
            }
        }
    }

    const double residual = care_residual(A, b, Q, r, P);
    if (!(residual < 1e-8))
        throw SolverError("solve_care: residual tolerance not reached", residual);
    if (!is_hurwitz<N>(closed_loop(A, b, lqr_gain(b, P, r))))
        throw SolverError("solve_care: converged to a non-stabilizing solution", residual);
    return P;
}

LqrDesign design_lqr(const LinearModel& model, const Mat4& Q, double R) {
    LqrDesign d;
    d.Q = Q;
    d.R = R;
    d.P = solve_care<4>(model.A, model.B, Q, R);
    d.K = lqr_gain<4>(model.B, d.P, R);
    d.residual = care_residual<4>(model.A, model.B, Q, R, d.P);

    const double scale = 1.0 + frobenius_norm(d.P);
    if (frobenius_norm(d.P - transpose(d.P)) >= 1e-10)
        throw SolverError("design_lqr: P is not symmetric", d.residual);
    for (double ev : symmetric_eigenvalues(d.P))
        if (ev < -1e-8 * scale)
            throw SolverError("design_lqr: P is not positive semidefinite", d.residual);

    const Mat4 Acl = model.A - outer(model.B, d.K);
    if (!is_hurwitz<4>(Acl))
        throw SolverError("design_lqr: closed loop is not Hurwitz", d.residual);
    d.closed_loop_eigs = eigenvalues<4>(Acl);
    return d;
}

template double care_residual<1>(const Mat<1>&, const Vec<1>&, const Mat<1>&, double,
                                 const Mat<1>&);
template double care_residual<4>(const Mat<4>&, const Vec<4>&, const Mat<4>&, double,
                                 const Mat<4>&);
template Mat<1> lyapunov_solve<1>(const Mat<1>&, const Mat<1>&);
template Mat<4> lyapunov_solve<4>(const Mat<4>&, const Mat<4>&);
template Vec<1> lqr_gain<1>(const Vec<1>&, const Mat<1>&, double);
template Vec<4> lqr_gain<4>(const Vec<4>&, const Mat<4>&, double);
template Mat<1> solve_care<1>(const Mat<1>&, const Vec<1>&, const Mat<1>&, double);
template Mat<4> solve_care<4>(const Mat<4>&, const Vec<4>&, const Mat<4>&, double);

}  // namespace furuta
