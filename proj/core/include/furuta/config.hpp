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

#include <optional>
#include <stdexcept>
#include <string>

#include "furuta/experiments.hpp"
#include "furuta/linear_model.hpp"
#include "furuta/params.hpp"

namespace furuta {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved experiment configuration. Every field is required in the
/// JSON document (the checked-in configs/default.json carries all defaults);
/// file paths are resolved relative to the config file's directory.
struct ExperimentConfig {
    ParamsFile params;       ///< from params_file
    LinearModel model;       ///< from model_file (design target / calibration target)
    Mat4 Q;                  ///< design weights
    double R = 1.0;
    ControllerConfig controller;
    double sigma_deg = 0.0;  ///< noise block
    double smoothing = 0.3;
    double f_s = 120.0;      ///< run block
    double duration = 10.0;
    std::uint64_t seed = 0;
    int substeps = 4;
    InputMode input_mode = InputMode::Measured;
    std::optional<State> initial;  ///< nullopt = policy-appropriate default
    SweepConfig sweep;
    CollectConfig collect;
    std::string output_dir = "out";
    std::string config_dir;  ///< directory of the loaded file
};

/// Loads and validates a config. Throws ConfigError with a readable message
/// on missing files, malformed JSON, missing keys, or out-of-range values
/// (f_s in [10, 1000], duration in (0, 600], smoothing in (0, 1], ...).
ExperimentConfig load_config(const std::string& path);

/// Assembles a runnable episode config for the given policy: hanging start
/// for swing-type policies, upright for balance-type, unless the config named
/// an explicit initial state.
EpisodeConfig make_episode_config(const ExperimentConfig& cfg, const Vec4& K, Policy policy);

}  // namespace furuta
