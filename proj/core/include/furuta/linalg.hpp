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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace furuta {

/// Fixed-size column vector. Everything in this project is 4-dimensional
/// (or smaller for the scalar self-tests), so dense stack storage is enough.
template <int N>
struct Vec {
    std::array<double, N> data{};

    double& operator[](int i) { return data[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return data[static_cast<std::size_t>(i)]; }

    static constexpr int size() { return N; }
};

/// Fixed-size square matrix, dense row-major.
template <int N>
struct Mat {
    std::array<double, static_cast<std::size_t>(N) * N> data{};

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * N + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * N + j]; }

    static Mat identity() {
        Mat m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    static constexpr int size() { return N; }
};

using Vec4 = Vec<4>;
using Mat4 = Mat<4>;

template <int N>
Vec<N> operator+(const Vec<N>& a, const Vec<N>& b) {
    Vec<N> r;
    for (int i = 0; i < N; ++i) r[i] = a[i] + b[i];
    return r;
}

template <int N>
Vec<N> operator-(const Vec<N>& a, const Vec<N>& b) {
    Vec<N> r;
    for (int i = 0; i < N; ++i) r[i] = a[i] - b[i];
    return r;
}

template <int N>
Vec<N> operator*(double s, const Vec<N>& a) {
    Vec<N> r;
    for (int i = 0; i < N; ++i) r[i] = s * a[i];
    return r;
}

template <int N>
double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (int i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <int N>
double norm(const Vec<N>& a) {
    return std::sqrt(dot(a, a));
}

template <int N>
double max_abs(const Vec<N>& a) {
    double m = 0.0;
    for (int i = 0; i < N; ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

template <int N>
Mat<N> operator+(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r;
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] + b.data[i];
    return r;
}

template <int N>
Mat<N> operator-(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r;
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = a.data[i] - b.data[i];
    return r;
}

template <int N>
Mat<N> operator*(double s, const Mat<N>& a) {
    Mat<N> r;
    for (std::size_t i = 0; i < a.data.size(); ++i) r.data[i] = s * a.data[i];
    return r;
}

template <int N>
Mat<N> operator*(const Mat<N>& a, const Mat<N>& b) {
    Mat<N> r;
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

template <int N>
Vec<N> operator*(const Mat<N>& a, const Vec<N>& x) {
    Vec<N> r;
    for (int i = 0; i < N; ++i) {
        double s = 0.0;
        for (int j = 0; j < N; ++j) s += a(i, j) * x[j];
        r[i] = s;
    }
    return r;
}

template <int N>
Mat<N> transpose(const Mat<N>& a) {
    Mat<N> r;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) r(i, j) = a(j, i);
    return r;
}

template <int N>
Mat<N> outer(const Vec<N>& a, const Vec<N>& b) {
    Mat<N> r;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) r(i, j) = a[i] * b[j];
    return r;
}

template <int N>
double frobenius_norm(const Mat<N>& a) {
    double s = 0.0;
    for (double v : a.data) s += v * v;
    return std::sqrt(s);
}

template <int N>
Mat<N> symmetrize(const Mat<N>& a) {
    Mat<N> r;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) r(i, j) = 0.5 * (a(i, j) + a(j, i));
    return r;
}

template <int N>
bool all_finite(const Mat<N>& a) {
    for (double v : a.data)
        if (!std::isfinite(v)) return false;
    return true;
}

template <int N>
bool all_finite(const Vec<N>& a) {
    for (double v : a.data)
        if (!std::isfinite(v)) return false;
    return true;
}

/// Solves a*x = b by Gaussian elimination with partial pivoting.
/// Throws std::runtime_error if the matrix is numerically singular.
template <int N>
Vec<N> solve(Mat<N> a, Vec<N> b) {
    for (int col = 0; col < N; ++col) {
        int pivot = col;
        for (int r = col + 1; r < N; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (std::abs(a(pivot, col)) < 1e-300)
            throw std::runtime_error("linalg: singular matrix in solve()");
        if (pivot != col) {
            for (int j = 0; j < N; ++j) std::swap(a(col, j), a(pivot, j));
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a(col, col);
        for (int r = col + 1; r < N; ++r) {
            const double f = a(r, col) * inv;
            if (f == 0.0) continue;
            for (int j = col; j < N; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec<N> x;
    for (int i = N - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < N; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
/// Input is symmetrized first; returns eigenvalues in ascending order.
template <int N>
std::array<double, N> symmetric_eigenvalues(const Mat<N>& m) {
    Mat<N> a = symmetrize(m);
    const double scale = frobenius_norm(a) + 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) off += a(i, j) * a(i, j);
        if (std::sqrt(off) < 1e-15 * scale) break;
        for (int p = 0; p < N - 1; ++p)
            for (int q = p + 1; q < N; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < N; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < N; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::array<double, N> ev;
    for (int i = 0; i < N; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace furuta
