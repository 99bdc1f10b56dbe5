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

#include <string>

#include "furuta/experiments.hpp"

namespace furuta {

/// Shortest-of-9-significant-digits decimal rendering via std::to_chars;
/// locale-independent, so identical inputs always serialize identically.
std::string format_g9(double v);

/// Writes content to a temp file in the target directory and renames it over
/// `path`, so interrupted runs never leave a truncated file behind.
void atomic_write_text(const std::string& path, const std::string& content);

/// CSV with header
///   t,theta,alpha,theta_dot,alpha_dot,theta_meas,alpha_meas,u_cmd,u_sat,reward,mode
/// Angles in radians at 9 significant digits; measurement fields empty in
/// privileged mode. An aborted episode gets a trailing "# aborted:" line.
void write_episode_csv(const EpisodeLog& log, const std::string& path);

/// CSV with header t,theta,alpha,theta_dot,alpha_dot,u_sat.
void write_dataset_csv(const std::vector<DatasetSample>& samples, const std::string& path);

void write_histogram_json(const StateHistogram& hist, const std::string& path);

void write_noise_sweep_json(const NoiseSweepOutput& out, const std::string& path);

void write_frequency_sweep_json(const FrequencySweepOutput& out, const std::string& path);

}  // namespace furuta
