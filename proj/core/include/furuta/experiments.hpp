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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "furuta/controllers.hpp"
#include "furuta/estimation.hpp"
#include "furuta/linalg.hpp"
#include "furuta/params.hpp"
#include "furuta/state.hpp"

namespace furuta {

/// Quadratic task reward in [0, 1]:
///   r = (1 - (4/5)|alpha|/pi - (1/5)|theta|/pi)^2
/// Angles must be wrapped into (-pi, pi].
double reward(const State& s);

/// Reference-signal and dual-oscillation settings for the two data-generation
/// controllers. Amplitudes in radians (volts for the oscillation), frequencies
/// in cycles per second; all sinusoids are amp*sin(2*pi*f*t).
struct DatagenConfig {
    double swing_amp = deg_to_rad(60.0);   ///< arm reference amplitude
    double swing_freq_hz = 0.05;
    double osc_voltage = 28.0;             ///< additive input oscillation, V
    double osc_freq_hz = 2.4;
    double sweep_amp = deg_to_rad(30.0);   ///< arm reference amplitude
    double sweep_freq_hz = 0.03;
};

/// The controller block of an experiment config.
struct ControllerConfig {
    double mu = 0.0;       ///< swing-up gain, V/J
    double u_max = 10.0;   ///< V
    PidState pid;          ///< gains + anti-windup for the datagen arm PID
    double alpha_catch = deg_to_rad(15.0);
    double alpha_release = deg_to_rad(25.0);
    double omega_catch = 5.0;
    double kick_voltage = 5.0;
    double kick_omega_eps = 1e-3;
    double kick_alpha_min = deg_to_rad(170.0);
    DatagenConfig datagen;
};

HybridConfig make_hybrid_config(const ControllerConfig& cc, const Vec4& K);

/// Swing-up data-generation law: energy pumping plus an arm PID tracking
/// theta_ref(t) = swing_amp * sin(2 pi swing_freq t), stepped at the control
/// period dt. Returns the saturated command and the updated PID state.
std::pair<double, PidState> datagen_swing(double t, const State& s,
                                          const ControllerConfig& cc, const PidState& pid,
                                          double dt, const PendulumParams& p);

/// Balance data-generation law: state feedback toward the slow arm sweep
/// x_ref = [sweep_amp sin(2 pi sweep_freq t), 0, 0, 0] plus the fast additive
/// oscillation osc_voltage * sin(2 pi osc_freq t); saturated.
double datagen_balance(double t, const State& s, const ControllerConfig& cc, const Vec4& K);

enum class Policy { Hybrid, Lqr, Swing, DatagenSwing, DatagenBalance };

/// Parses "hybrid", "lqr", "swing", "datagen-swing", "datagen-balance".
std::optional<Policy> parse_policy(const std::string& name);
std::string policy_name(Policy p);

enum class InputMode { Privileged, Measured };

struct EpisodeConfig {
    PendulumParams params;
    Vec4 K;
    ControllerConfig controller;
    Policy policy = Policy::Hybrid;
    InputMode input_mode = InputMode::Measured;
    double sigma_deg = 0.0;   ///< measurement noise std (measured mode)
    double smoothing = 0.3;   ///< velocity filter coefficient a in (0, 1]
    double f_s = 120.0;       ///< control frequency, Hz
    double duration = 10.0;   ///< s
    int substeps = 4;         ///< physics sub-steps per control period
    State initial = hanging_rest();
    std::uint64_t seed = 0;
    double t0 = 0.0;          ///< time origin for the reference signals
};

struct EpisodeRow {
    double t = 0.0;
    double theta = 0.0, alpha = 0.0;          ///< wrapped, rad
    double theta_dot = 0.0, alpha_dot = 0.0;  ///< rad/s
    bool has_meas = false;
    double theta_meas = 0.0, alpha_meas = 0.0;  ///< wrapped, rad
    double u_cmd = 0.0, u_sat = 0.0;            ///< V
    double reward = 0.0;
    HybridMode mode = HybridMode::SwingUp;
};

struct EpisodeLog {
    std::vector<EpisodeRow> rows;
    bool failed = false;          ///< integration blowup aborted the run
    std::string failure;
    State final_state;            ///< unwrapped state after the last step
};

/// Runs one closed-loop episode at fixed control rate f_s. Per tick: corrupt
/// the measurement (measured mode), update the velocity filter, evaluate the
/// policy on the measured state (privileged mode bypasses both), saturate,
/// hold the input over `substeps` RK4 sub-steps, and log a row. Integration
/// blowup stops the run and leaves the partial log with `failed` set.
/// Requires duration * f_s <= 1e7 rows.
EpisodeLog run_episode(const EpisodeConfig& cfg);

/// True iff |wrapped alpha| stays below threshold for the entire final `hold`
/// seconds of the log. Logs shorter than `hold` (including aborted ones) fail.
bool success_criterion(const EpisodeLog& log, double hold = 3.0,
                       double threshold = deg_to_rad(10.0));

struct SweepResult {
    double param = 0.0;  ///< sigma in degrees, or f_s in Hz
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
};

struct SweepConfig {
    std::vector<double> sigmas_deg = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> frequencies_hz = {20.0, 40.0, 60.0, 80.0, 100.0, 120.0};
    int trials = 20;
    double noise_duration = 10.0;  ///< s, hybrid swing-up + balance episodes
    double freq_duration = 6.0;    ///< s, balance-only episodes
    double hold = 3.0;             ///< s, success hold window
    double success_alpha = deg_to_rad(10.0);
    double freq_init_alpha = deg_to_rad(10.0);       ///< |alpha_0| for balance trials
    double freq_init_theta_jitter = deg_to_rad(20.0);  ///< theta_0 ~ U(-j, j)
    InputMode noise_input_mode = InputMode::Measured;
    InputMode freq_input_mode = InputMode::Measured;
    int threads = 0;  ///< 0 = hardware concurrency, capped by FURUTA_BENCH_THREADS
};

struct NoiseSweepOutput {
    std::vector<SweepResult> results;
    std::optional<double> sigma_star;  ///< largest grid sigma with rate >= 0.9
};

struct FrequencySweepOutput {
    std::vector<SweepResult> results;
    std::optional<double> fs_min;  ///< smallest grid f_s with rate >= 0.9
};

/// Hybrid swing-up-and-balance episodes from hanging rest on the measured
/// state, `trials` seeded runs per noise level. Trials run in parallel;
/// per-trial streams are derived from (seed, grid index, trial index) so the
/// aggregate is independent of scheduling.
NoiseSweepOutput noise_sweep(const EpisodeConfig& base, const SweepConfig& sweep);

/// Noise-free balance episodes from |alpha_0| = freq_init_alpha (sign seeded,
/// arm angle jittered per trial) across control frequencies.
FrequencySweepOutput frequency_sweep(const EpisodeConfig& base, const SweepConfig& sweep);

enum class DatasetMode { Biased, Unbiased };

struct CollectConfig {
    long target_count = 50000;
    double balance_fraction = 0.85;  ///< biased mode: share drawn from balance chunks
    double chunk_duration = 5.0;     ///< s per chained episode chunk
    double reset_alpha = deg_to_rad(45.0);  ///< balance chunk restarts upright beyond this
    double bin_width_deg = 15.0;            ///< histogram bin width; must divide 360
};

struct DatasetSample {
    double t = 0.0;
    double theta = 0.0, alpha = 0.0;  ///< wrapped, rad
    double theta_dot = 0.0, alpha_dot = 0.0;
    double u_sat = 0.0;
};

struct StateHistogram {
    double bin_width_deg = 15.0;
    std::vector<double> theta_edges_deg;  ///< -180 .. 180, size bins+1
    std::vector<double> alpha_edges_deg;
    std::vector<std::vector<long>> counts;  ///< [theta bin][alpha bin]
    long total = 0;
};

StateHistogram make_histogram(const std::vector<DatasetSample>& samples, double bin_width_deg);

struct CollectOutput {
    std::vector<DatasetSample> samples;
    StateHistogram histogram;
};

/// Unbiased mode chains swing-up data-generation chunks (the arm reference
/// sweeps theta, the pendulum passes through all alpha bands). Biased mode
/// mixes balance-chunk samples (share balance_fraction, restarting upright
/// whenever a chunk ends fallen) with swing chunks for the remainder. Emits
/// exactly target_count samples plus their (theta, alpha) histogram.
CollectOutput collect_dataset(DatasetMode mode, const EpisodeConfig& base,
                              const CollectConfig& cc);

}  // namespace furuta
