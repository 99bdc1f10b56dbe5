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

#include "furuta/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string_view>
#include <vector>

#include "furuta/dynamics.hpp"

namespace furuta {

namespace {

constexpr int kDim = 6;  // log(L_a, J_a, J_p, b_a, b_p, k_u)

using Point = std::array<double, kDim>;

PendulumParams to_params(const PendulumParams& base, const Point& x) {
    PendulumParams p = base;
    p.L_a = std::exp(x[0]);
    p.J_a = std::exp(x[1]);
    p.J_p = std::exp(x[2]);
    p.b_a = std::exp(x[3]);
    p.b_p = std::exp(x[4]);
    p.k_u = std::exp(x[5]);
    return p;
}

Point encode(const PendulumParams& p) {
    return {std::log(p.L_a), std::log(p.J_a), std::log(p.J_p),
            std::log(p.b_a), std::log(p.b_p), std::log(p.k_u)};
}

struct Entry {
    const char* name;
    int i, j;    // A entry when j >= 0, else B[i]
};

constexpr std::array<Entry, 6> kEntries = {{
    {"A[2][1]", 2, 1},
    {"A[3][1]", 3, 1},
    {"A[2][2]", 2, 2},
    {"A[3][3]", 3, 3},
    {"B[2]", 2, -1},
    {"B[3]", 3, -1},
}};

double entry_value(const LinearModel& m, const Entry& e) {
    return e.j >= 0 ? m.A(e.i, e.j) : m.B[e.i];
}

std::array<EntryFit, 6> fit_report(const LinearModel& target, const LinearModel& achieved) {
    std::array<EntryFit, 6> fits;
    for (std::size_t k = 0; k < kEntries.size(); ++k) {
        const Entry& e = kEntries[k];
        const double t = entry_value(target, e);
        const double a = entry_value(achieved, e);
        fits[k] = {e.name, t, a, std::abs((a - t) / t)};
    }
    return fits;
}

double objective(const LinearModel& target, const PendulumParams& base, const Point& x) {
    PendulumParams p = to_params(base, x);
    LinearModel m;
    try {
        m = linearize(p);
    } catch (const std::exception&) {
        return 1e12;  // invalid region (e.g. indefinite mass matrix)
    }
    double s = 0.0;
    for (const Entry& e : kEntries) {
        const double t = entry_value(target, e);
        const double r = (entry_value(m, e) - t) / t;
        s += r * r;
    }
    return s;
}

/// Classic Nelder-Mead on the log-parameter simplex. Returns iterations used.
int nelder_mead(const LinearModel& target, const PendulumParams& base, Point& best,
                double& best_f, int max_iter) {
    constexpr double kAlpha = 1.0, kGamma = 2.0, kRho = 0.5, kSigma = 0.5;

    std::vector<std::pair<double, Point>> simplex;
    simplex.reserve(kDim + 1);
    simplex.emplace_back(objective(target, base, best), best);
    for (int i = 0; i < kDim; ++i) {
        Point v = best;
        v[static_cast<std::size_t>(i)] += 0.25;
        simplex.emplace_back(objective(target, base, v), v);
    }

    int iter = 0;
    for (; iter < max_iter; ++iter) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (simplex.front().first < 1e-18 ||
            simplex.back().first - simplex.front().first < 1e-18)
            break;

        Point centroid{};
        for (int i = 0; i < kDim; ++i)
            for (int d = 0; d < kDim; ++d)
                centroid[static_cast<std::size_t>(d)] +=
                    simplex[static_cast<std::size_t>(i)].second[static_cast<std::size_t>(d)] /
                    kDim;

        const auto blend = [&](double coeff) {
            Point p;
            const Point& worst = simplex.back().second;
            for (int d = 0; d < kDim; ++d)
                p[static_cast<std::size_t>(d)] =
                    centroid[static_cast<std::size_t>(d)] +
                    coeff * (centroid[static_cast<std::size_t>(d)] -
                             worst[static_cast<std::size_t>(d)]);
            return p;
        };

        const Point reflected = blend(kAlpha);
        const double f_ref = objective(target, base, reflected);
        if (f_ref < simplex.front().first) {
            const Point expanded = blend(kGamma);
            const double f_exp = objective(target, base, expanded);
            simplex.back() = f_exp < f_ref ? std::make_pair(f_exp, expanded)
                                           : std::make_pair(f_ref, reflected);
        } else if (f_ref < simplex[simplex.size() - 2].first) {
            simplex.back() = {f_ref, reflected};
        } else {
            const Point contracted = blend(-kRho);
            const double f_con = objective(target, base, contracted);
            if (f_con < simplex.back().first) {
                simplex.back() = {f_con, contracted};
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (int d = 0; d < kDim; ++d)
                        simplex[i].second[static_cast<std::size_t>(d)] =
                            simplex.front().second[static_cast<std::size_t>(d)] +
                            kSigma * (simplex[i].second[static_cast<std::size_t>(d)] -
                                      simplex.front().second[static_cast<std::size_t>(d)]);
                    simplex[i].first = objective(target, base, simplex[i].second);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    best = simplex.front().second;
    best_f = simplex.front().first;
    return iter;
}

}  // namespace

CalibrationResult calibrate_params(const LinearModel& target, const PendulumParams& initial) {
    validate(initial);
    validate_linear_model(target);

    Point x = encode(initial);
    double f0 = objective(target, initial, x);

    CalibrationResult result;
    result.params = initial;
    result.iterations = 0;

    // Already on target: nothing to move.
    if (f0 >= 1e-18) {
        double f = f0;
        int iters = nelder_mead(target, initial, x, f, 4000);
        // One restart from the best point shakes off simplex collapse.
        if (f > 1e-14) iters += nelder_mead(target, initial, x, f, 4000);
        result.params = to_params(initial, x);
        result.iterations = iters;
        f0 = f;
    }

    const LinearModel achieved = linearize(result.params);
    result.objective = f0;
    result.fits = fit_report(target, achieved);

    // The gravity and input entries carry the plant identity; 5% each.
    for (const char* primary : {"A[2][1]", "A[3][1]", "B[2]", "B[3]"}) {
        for (const EntryFit& fit : result.fits) {
            if (std::string_view(fit.name) == primary && !(fit.rel_error <= 0.05))
                throw CalibrationFailure(
                    std::string("calibration: ") + primary + " off by " +
                        std::to_string(fit.rel_error * 100.0) + "%",
                    result.fits);
        }
    }
    return result;
}

}  // namespace furuta
