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

#include "furuta/episode_io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace furuta {

std::string format_g9(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    if (res.ec != std::errc()) throw std::runtime_error("format_g9: to_chars failed");
    return std::string(buf, res.ptr);
}

void atomic_write_text(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_episode_csv(const EpisodeLog& log, const std::string& path) {
    std::string out;
    out.reserve(log.rows.size() * 96 + 128);
    out += "t,theta,alpha,theta_dot,alpha_dot,theta_meas,alpha_meas,u_cmd,u_sat,reward,mode\n";
    for (const EpisodeRow& r : log.rows) {
        out += format_g9(r.t);
        out += ',';
        out += format_g9(r.theta);
        out += ',';
        out += format_g9(r.alpha);
        out += ',';
        out += format_g9(r.theta_dot);
        out += ',';
        out += format_g9(r.alpha_dot);
        out += ',';
        if (r.has_meas) out += format_g9(r.theta_meas);
        out += ',';
        if (r.has_meas) out += format_g9(r.alpha_meas);
        out += ',';
        out += format_g9(r.u_cmd);
        out += ',';
        out += format_g9(r.u_sat);
        out += ',';
        out += format_g9(r.reward);
        out += ',';
        out += r.mode == HybridMode::Balance ? "balance" : "swingup";
        out += '\n';
    }
    if (log.failed) out += "# aborted: " + log.failure + "\n";
    atomic_write_text(path, out);
}

void write_dataset_csv(const std::vector<DatasetSample>& samples, const std::string& path) {
    std::string out;
    out.reserve(samples.size() * 64 + 64);
    out += "t,theta,alpha,theta_dot,alpha_dot,u_sat\n";
    for (const DatasetSample& s : samples) {
        out += format_g9(s.t);
        out += ',';
        out += format_g9(s.theta);
        out += ',';
        out += format_g9(s.alpha);
        out += ',';
        out += format_g9(s.theta_dot);
        out += ',';
        out += format_g9(s.alpha_dot);
        out += ',';
        out += format_g9(s.u_sat);
        out += '\n';
    }
    atomic_write_text(path, out);
}

void write_histogram_json(const StateHistogram& hist, const std::string& path) {
    nlohmann::ordered_json j;
    j["bin_width_deg"] = hist.bin_width_deg;
    j["theta_edges_deg"] = hist.theta_edges_deg;
    j["alpha_edges_deg"] = hist.alpha_edges_deg;
    j["counts"] = hist.counts;
    j["total"] = hist.total;
    atomic_write_text(path, j.dump(2) + "\n");
}

namespace {

nlohmann::ordered_json results_json(const std::vector<SweepResult>& results) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepResult& r : results) {
        nlohmann::ordered_json item;
        item["param"] = r.param;
        item["trials"] = r.trials;
        item["successes"] = r.successes;
        item["success_rate"] = r.success_rate;
        arr.push_back(item);
    }
    return arr;
}

}  // namespace

void write_noise_sweep_json(const NoiseSweepOutput& out, const std::string& path) {
    nlohmann::ordered_json j;
    j["kind"] = "noise";
    j["results"] = results_json(out.results);
    if (out.sigma_star)
        j["sigma_star"] = *out.sigma_star;
    else
        j["sigma_star"] = nullptr;
    atomic_write_text(path, j.dump(2) + "\n");
}

void write_frequency_sweep_json(const FrequencySweepOutput& out, const std::string& path) {
    nlohmann::ordered_json j;
    j["kind"] = "frequency";
    j["results"] = results_json(out.results);
    if (out.fs_min)
        j["fs_min"] = *out.fs_min;
    else
        j["fs_min"] = nullptr;
    atomic_write_text(path, j.dump(2) + "\n");
}

}  // namespace furuta
