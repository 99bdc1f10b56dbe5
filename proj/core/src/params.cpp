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

#include "furuta/params.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "furuta/episode_io.hpp"

namespace furuta {

void validate(const PendulumParams& p) {
    const auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw std::invalid_argument(std::string("params: ") + name + " must be > 0");
    };
    positive(p.m_p, "m_p");
    positive(p.l, "l");
    positive(p.L_a, "L_a");
    positive(p.J_a, "J_a");
    positive(p.J_p, "J_p");
    positive(p.k_u, "k_u");
    positive(p.g, "g");
    if (!(p.b_a >= 0.0) || !(p.b_p >= 0.0))
        throw std::invalid_argument("params: damping must be >= 0");
}

PendulumParams nominal_params() {
    PendulumParams p;
    p.m_p = 0.024;
    p.l = 0.0645;
    p.L_a = 0.08;
    p.J_a = 1e-4;
    p.J_p = 1.2e-4;
    p.b_a = 1e-5;
    p.b_p = 1e-5;
    p.k_u = 0.03;
    p.g = 9.81;
    return p;
}

ParamsFile load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("params: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("params: invalid JSON in " + path + ": " + e.what());
    }
    ParamsFile f;
    try {
        f.params.m_p = j.at("m_p").get<double>();
        f.params.l = j.at("l").get<double>();
        f.params.L_a = j.at("L_a").get<double>();
        f.params.J_a = j.at("J_a").get<double>();
        f.params.J_p = j.at("J_p").get<double>();
        f.params.b_a = j.at("b_a").get<double>();
        f.params.b_p = j.at("b_p").get<double>();
        f.params.k_u = j.at("k_u").get<double>();
        f.params.g = j.at("g").get<double>();
        f.provenance = j.value("provenance", "");
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("params: missing field in " + path + ": " + e.what());
    }
    validate(f.params);
    return f;
}

void save_params(const ParamsFile& file, const std::string& path, const std::string& extra_json) {
    nlohmann::ordered_json j;
    j["m_p"] = file.params.m_p;
    j["l"] = file.params.l;
    j["L_a"] = file.params.L_a;
    j["J_a"] = file.params.J_a;
    j["J_p"] = file.params.J_p;
    j["b_a"] = file.params.b_a;
    j["b_p"] = file.params.b_p;
    j["k_u"] = file.params.k_u;
    j["g"] = file.params.g;
    j["provenance"] = file.provenance;
    if (!extra_json.empty()) {
        const auto extra = nlohmann::ordered_json::parse(extra_json);
        for (const auto& [key, value] : extra.items()) j[key] = value;
    }
    atomic_write_text(path, j.dump(2) + "\n");
}

}  // namespace furuta
