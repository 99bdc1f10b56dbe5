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

#include "furuta/linear_model.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace furuta {

void validate_linear_model(const LinearModel& m) {
    const double expected_row0[4] = {0.0, 0.0, 1.0, 0.0};
    const double expected_row1[4] = {0.0, 0.0, 0.0, 1.0};
    for (int j = 0; j < 4; ++j) {
        if (m.A(0, j) != expected_row0[j] || m.A(1, j) != expected_row1[j])
            throw std::invalid_argument(
                "linear model: rows 0 and 1 of A must be the kinematic identities");
    }
    if (m.B[0] != 0.0 || m.B[1] != 0.0)
        throw std::invalid_argument("linear model: B[0] and B[1] must be zero");
    if (!all_finite(m.A) || !all_finite(m.B))
        throw std::invalid_argument("linear model: non-finite entries");
}

LinearModel load_linear_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("linear model: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("linear model: invalid JSON in " + path + ": " + e.what());
    }
    LinearModel m;
    try {
        const auto& a = j.at("A");
        const auto& b = j.at("B");
        if (a.size() != 4 || b.size() != 4)
            throw std::runtime_error("linear model: A must be 4x4 and B length 4");
        for (int i = 0; i < 4; ++i) {
            if (a[static_cast<std::size_t>(i)].size() != 4)
                throw std::runtime_error("linear model: A must be 4x4");
            for (int jj = 0; jj < 4; ++jj)
                m.A(i, jj) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)]
                                 .get<double>();
            m.B[i] = b[static_cast<std::size_t>(i)].get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("linear model: bad document " + path + ": " + e.what());
    }
    validate_linear_model(m);
    return m;
}

}  // namespace furuta
