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

#include "furuta/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace furuta {

namespace {

using nlohmann::json;

const json& need(const json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) throw ConfigError("config: missing \"" + std::string(key) + "\" in " + where);
    return *it;
}

double need_number(const json& j, const char* key, const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number()) throw ConfigError("config: \"" + std::string(key) + "\" must be a number");
    return v.get<double>();
}

InputMode parse_input_mode(const std::string& s, const std::string& where) {
    if (s == "privileged") return InputMode::Privileged;
    if (s == "measured") return InputMode::Measured;
    throw ConfigError("config: input mode in " + where +
                      " must be \"privileged\" or \"measured\", got \"" + s + "\"");
}

std::string resolve(const std::string& dir, const std::string& path) {
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError("config: invalid JSON in " + path + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");

    ExperimentConfig cfg;
    cfg.config_dir = std::filesystem::path(path).parent_path().string();
    if (cfg.config_dir.empty()) cfg.config_dir = ".";

    try {
        const std::string params_path =
            resolve(cfg.config_dir, need(root, "params_file", "config").get<std::string>());
        cfg.params = load_params(params_path);

        const std::string model_path =
            resolve(cfg.config_dir, need(root, "model_file", "config").get<std::string>());
        cfg.model = load_linear_model(model_path);

        const json& design = need(root, "design", "config");
        const json& q_diag = need(design, "q_diag", "design");
        if (!q_diag.is_array() || q_diag.size() != 4)
            throw ConfigError("config: design.q_diag must be a 4-array");
        for (int i = 0; i < 4; ++i)
            cfg.Q(i, i) = q_diag[static_cast<std::size_t>(i)].get<double>();
        cfg.R = need_number(design, "r", "design");
        if (!(cfg.R > 0.0)) throw ConfigError("config: design.r must be > 0");

        const json& ctl = need(root, "controller", "config");
        cfg.controller.mu = need_number(ctl, "mu_volts_per_joule", "controller");
        cfg.controller.u_max = need_number(ctl, "u_max_volts", "controller");
        if (!(cfg.controller.u_max > 0.0))
            throw ConfigError("config: controller.u_max_volts must be > 0");
        const json& pid = need(ctl, "pid", "controller");
        cfg.controller.pid.k_p = need_number(pid, "k_p", "controller.pid");
        cfg.controller.pid.k_i = need_number(pid, "k_i", "controller.pid");
        cfg.controller.pid.k_d = need_number(pid, "k_d", "controller.pid");
        cfg.controller.pid.integral_limit = need_number(pid, "integral_limit", "controller.pid");
        cfg.controller.alpha_catch =
            deg_to_rad(need_number(ctl, "alpha_catch_deg", "controller"));
        cfg.controller.alpha_release =
            deg_to_rad(need_number(ctl, "alpha_release_deg", "controller"));
        if (!(cfg.controller.alpha_release > cfg.controller.alpha_catch))
            throw ConfigError("config: alpha_release_deg must exceed alpha_catch_deg");
        cfg.controller.omega_catch = need_number(ctl, "omega_catch_rad_s", "controller");
        cfg.controller.kick_voltage = need_number(ctl, "kick_voltage", "controller");
        cfg.controller.kick_omega_eps = need_number(ctl, "kick_omega_eps", "controller");
        cfg.controller.kick_alpha_min =
            deg_to_rad(need_number(ctl, "kick_alpha_min_deg", "controller"));
        const json& dg = need(ctl, "datagen", "controller");
        cfg.controller.datagen.swing_amp =
            deg_to_rad(need_number(dg, "swing_amp_deg", "datagen"));
        cfg.controller.datagen.swing_freq_hz = need_number(dg, "swing_freq_hz", "datagen");
        cfg.controller.datagen.osc_voltage = need_number(dg, "osc_voltage", "datagen");
        cfg.controller.datagen.osc_freq_hz = need_number(dg, "osc_freq_hz", "datagen");
        cfg.controller.datagen.sweep_amp =
            deg_to_rad(need_number(dg, "sweep_amp_deg", "datagen"));
        cfg.controller.datagen.sweep_freq_hz = need_number(dg, "sweep_freq_hz", "datagen");

        const json& noise = need(root, "noise", "config");
        cfg.sigma_deg = need_number(noise, "sigma_deg", "noise");
        if (cfg.sigma_deg < 0.0) throw ConfigError("config: noise.sigma_deg must be >= 0");
        cfg.smoothing = need_number(noise, "smoothing", "noise");
        if (!(cfg.smoothing > 0.0 && cfg.smoothing <= 1.0))
            throw ConfigError("config: noise.smoothing must be in (0, 1]");

        const json& run = need(root, "run", "config");
        cfg.f_s = need_number(run, "f_s_hz", "run");
        if (!(cfg.f_s >= 10.0 && cfg.f_s <= 1000.0))
            throw ConfigError("config: run.f_s_hz must be in [10, 1000]");
        cfg.duration = need_number(run, "duration_s", "run");
        if (!(cfg.duration > 0.0 && cfg.duration <= 600.0))
            throw ConfigError("config: run.duration_s must be in (0, 600]");
        cfg.seed = need(run, "seed", "run").get<std::uint64_t>();
        cfg.substeps = need(run, "substeps", "run").get<int>();
        if (cfg.substeps < 1 || cfg.substeps > 64)
            throw ConfigError("config: run.substeps must be in [1, 64]");
        cfg.input_mode =
            parse_input_mode(need(run, "input_mode", "run").get<std::string>(), "run");
        const json& initial = need(run, "initial", "run");
        if (initial.is_string()) {
            const std::string name = initial.get<std::string>();
            if (name == "auto")
                cfg.initial = std::nullopt;
            else if (name == "hanging")
                cfg.initial = hanging_rest();
            else if (name == "upright")
                cfg.initial = upright_rest();
            else
                throw ConfigError("config: run.initial must be auto|hanging|upright or a 4-array");
        } else if (initial.is_array() && initial.size() == 4) {
            cfg.initial = State{initial[0].get<double>(), initial[1].get<double>(),
                                initial[2].get<double>(), initial[3].get<double>()};
        } else {
            throw ConfigError("config: run.initial must be auto|hanging|upright or a 4-array");
        }

        const json& sweep = need(root, "sweep", "config");
        cfg.sweep.sigmas_deg = need(sweep, "noise_sigmas_deg", "sweep").get<std::vector<double>>();
        cfg.sweep.frequencies_hz =
            need(sweep, "frequencies_hz", "sweep").get<std::vector<double>>();
        if (cfg.sweep.sigmas_deg.empty() || cfg.sweep.frequencies_hz.empty())
            throw ConfigError("config: sweep grids must be non-empty");
        if (!std::is_sorted(cfg.sweep.sigmas_deg.begin(), cfg.sweep.sigmas_deg.end()))
            throw ConfigError("config: sweep.noise_sigmas_deg must be ascending");
        if (!std::is_sorted(cfg.sweep.frequencies_hz.begin(), cfg.sweep.frequencies_hz.end()))
            throw ConfigError("config: sweep.frequencies_hz must be ascending");
        for (double f : cfg.sweep.frequencies_hz)
            if (!(f >= 10.0 && f <= 1000.0))
                throw ConfigError("config: sweep frequencies must be in [10, 1000] Hz");
        cfg.sweep.trials = need(sweep, "trials", "sweep").get<int>();
        if (cfg.sweep.trials < 1) throw ConfigError("config: sweep.trials must be >= 1");
        cfg.sweep.noise_duration = need_number(sweep, "noise_duration_s", "sweep");
        cfg.sweep.freq_duration = need_number(sweep, "freq_duration_s", "sweep");
        cfg.sweep.hold = need_number(sweep, "success_hold_s", "sweep");
        cfg.sweep.success_alpha = deg_to_rad(need_number(sweep, "success_alpha_deg", "sweep"));
        cfg.sweep.freq_init_alpha =
            deg_to_rad(need_number(sweep, "freq_init_alpha_deg", "sweep"));
        cfg.sweep.freq_init_theta_jitter =
            deg_to_rad(need_number(sweep, "freq_init_theta_jitter_deg", "sweep"));
        cfg.sweep.noise_input_mode = parse_input_mode(
            need(sweep, "noise_input_mode", "sweep").get<std::string>(), "sweep");
        cfg.sweep.freq_input_mode = parse_input_mode(
            need(sweep, "freq_input_mode", "sweep").get<std::string>(), "sweep");

        const json& collect = need(root, "collect", "config");
        cfg.collect.target_count = need(collect, "target_count", "collect").get<long>();
        cfg.collect.balance_fraction = need_number(collect, "balance_fraction", "collect");
        if (!(cfg.collect.balance_fraction >= 0.0 && cfg.collect.balance_fraction <= 1.0))
            throw ConfigError("config: collect.balance_fraction must be in [0, 1]");
        cfg.collect.chunk_duration = need_number(collect, "chunk_duration_s", "collect");
        cfg.collect.reset_alpha = deg_to_rad(need_number(collect, "reset_alpha_deg", "collect"));
        cfg.collect.bin_width_deg = need_number(collect, "bin_width_deg", "collect");

        cfg.output_dir = need(root, "output_dir", "config").get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value in " + path + ": " + e.what());
    }
    return cfg;
}

EpisodeConfig make_episode_config(const ExperimentConfig& cfg, const Vec4& K, Policy policy) {
    EpisodeConfig ep;
    ep.params = cfg.params.params;
    ep.K = K;
    ep.controller = cfg.controller;
    ep.policy = policy;
    ep.input_mode = cfg.input_mode;
    ep.sigma_deg = cfg.sigma_deg;
    ep.smoothing = cfg.smoothing;
    ep.f_s = cfg.f_s;
    ep.duration = cfg.duration;
    ep.substeps = cfg.substeps;
    ep.seed = cfg.seed;
    if (cfg.initial) {
        ep.initial = *cfg.initial;
    } else {
        const bool from_hanging = policy == Policy::Hybrid || policy == Policy::Swing ||
                                  policy == Policy::DatagenSwing;
        ep.initial = from_hanging ? hanging_rest() : upright_rest();
    }
    return ep;
}

}  // namespace furuta
