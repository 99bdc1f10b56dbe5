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

#include "furuta/stability.hpp"

#include <algorithm>
#include <cmath>

namespace furuta {

namespace {

/// Monic characteristic polynomial coefficients [c1..cN] of m via
/// Faddeev-LeVerrier: p(x) = x^N + c1 x^(N-1) + ... + cN.
template <int N>
std::array<double, N> char_poly(const Mat<N>& m) {
    std::array<double, N> c{};
    Mat<N> mk = m;
    double ck = 0.0;
    for (int k = 1; k <= N; ++k) {
        if (k > 1) {
            Mat<N> shifted = mk;
            for (int i = 0; i < N; ++i) shifted(i, i) += ck;
            mk = m * shifted;
        }
        double trace = 0.0;
        for (int i = 0; i < N; ++i) trace += mk(i, i);
        ck = -trace / k;
        c[static_cast<std::size_t>(k - 1)] = ck;
    }
    return c;
}

template <int N>
std::complex<double> eval_poly(const std::array<double, N>& c, std::complex<double> x) {
    std::complex<double> v = 1.0;
    for (int k = 0; k < N; ++k) v = v * x + c[static_cast<std::size_t>(k)];
    return v;
}

/// Durand-Kerner simultaneous iteration for all roots of the monic polynomial.
template <int N>
std::array<std::complex<double>, N> poly_roots(const std::array<double, N>& c) {
    std::array<std::complex<double>, N> x;
    if constexpr (N == 1) {
        x[0] = std::complex<double>(-c[0], 0.0);
        return x;
    }

    // Fujiwara root radius bound keeps the start circle at the right scale.
    double radius = 0.0;
    for (int k = 1; k <= N; ++k)
        radius = std::max(radius,
                          std::pow(std::abs(c[static_cast<std::size_t>(k - 1)]), 1.0 / k));
    radius = 2.0 * radius + 1.0;

    for (int k = 0; k < N; ++k) {
        const double phi = 2.0 * 3.14159265358979323846 * k / N + 0.35;
        x[static_cast<std::size_t>(k)] =
            radius * std::complex<double>(std::cos(phi), std::sin(phi));
    }

    bool converged = false;
    for (int iter = 0; iter < 1000 && !converged; ++iter) {
        double max_update = 0.0;
        for (int k = 0; k < N; ++k) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < N; ++j)
                if (j != k) denom *= x[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(j)];
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            const std::complex<double> delta =
                eval_poly<N>(c, x[static_cast<std::size_t>(k)]) / denom;
            x[static_cast<std::size_t>(k)] -= delta;
            max_update = std::max(max_update, std::abs(delta));
        }
        converged = max_update < 1e-13 * radius;
    }

    // Residual sanity independent of the update criterion.
    for (int k = 0; k < N; ++k) {
        double scale = 1.0;
        const double ax = std::abs(x[static_cast<std::size_t>(k)]);
        double pw = 1.0;
        for (int j = N - 1; j >= 0; --j) {
            scale += std::abs(c[static_cast<std::size_t>(j)]) * pw;
            pw *= ax;
        }
        scale += pw;
        if (std::abs(eval_poly<N>(c, x[static_cast<std::size_t>(k)])) > 1e-7 * scale)
            throw RootFindingError("eigenvalues: root iteration did not converge");
    }
    return x;
}

}  // namespace

template <int N>
std::array<std::complex<double>, N> eigenvalues(const Mat<N>& m) {
    if (!all_finite(m)) throw std::invalid_argument("eigenvalues: non-finite entries");
    auto roots = poly_roots<N>(char_poly<N>(m));
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

template <int N>
bool is_hurwitz(const Mat<N>& m, double margin) {
    for (const auto& ev : eigenvalues<N>(m))
        if (!(ev.real() < -margin)) return false;
    return true;
}

template std::array<std::complex<double>, 1> eigenvalues<1>(const Mat<1>&);
template std::array<std::complex<double>, 2> eigenvalues<2>(const Mat<2>&);
template std::array<std::complex<double>, 3> eigenvalues<3>(const Mat<3>&);
template std::array<std::complex<double>, 4> eigenvalues<4>(const Mat<4>&);
template bool is_hurwitz<1>(const Mat<1>&, double);
template bool is_hurwitz<2>(const Mat<2>&, double);
template bool is_hurwitz<3>(const Mat<3>&, double);
template bool is_hurwitz<4>(const Mat<4>&, double);

}  // namespace furuta
