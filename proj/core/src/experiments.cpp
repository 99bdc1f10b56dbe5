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

#include "furuta/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "furuta/dynamics.hpp"
#include "furuta/rng.hpp"

namespace furuta {

double reward(const State& s) {
    const double pi = std::numbers::pi;
    const double v = 1.0 - 0.8 * std::abs(s.alpha) / pi - 0.2 * std::abs(s.theta) / pi;
    return v * v;
}

HybridConfig make_hybrid_config(const ControllerConfig& cc, const Vec4& K) {
    HybridConfig hc;
    hc.K = K;
    hc.mu = cc.mu;
    hc.u_max = cc.u_max;
    hc.alpha_catch = cc.alpha_catch;
    hc.alpha_release = cc.alpha_release;
    hc.omega_catch = cc.omega_catch;
    hc.kick_voltage = cc.kick_voltage;
    hc.kick_omega_eps = cc.kick_omega_eps;
    hc.kick_alpha_min = cc.kick_alpha_min;
    return hc;
}

namespace {

double sine(double amp, double freq_hz, double t) {
    return amp * std::sin(2.0 * std::numbers::pi * freq_hz * t);
}

}  // namespace

std::pair<double, PidState> datagen_swing(double t, const State& s,
                                          const ControllerConfig& cc, const PidState& pid,
                                          double dt, const PendulumParams& p) {
    const double theta_ref = sine(cc.datagen.swing_amp, cc.datagen.swing_freq_hz, t);
    const double pump = swing_up(s, cc.mu, p);
    auto [correction, next_pid] = pid_step(pid, wrap_angle(s.theta - theta_ref), dt);
    return {saturate(pump + correction, cc.u_max), next_pid};
}

double datagen_balance(double t, const State& s, const ControllerConfig& cc, const Vec4& K) {
    State x_ref{};
    x_ref.theta = sine(cc.datagen.sweep_amp, cc.datagen.sweep_freq_hz, t);
    const double u = lqr_control(K, s, x_ref) + sine(cc.datagen.osc_voltage,
                                                     cc.datagen.osc_freq_hz, t);
    return saturate(u, cc.u_max);
}

std::optional<Policy> parse_policy(const std::string& name) {
    if (name == "hybrid") return Policy::Hybrid;
    if (name == "lqr") return Policy::Lqr;
    if (name == "swing") return Policy::Swing;
    if (name == "datagen-swing") return Policy::DatagenSwing;
    if (name == "datagen-balance") return Policy::DatagenBalance;
    return std::nullopt;
}

std::string policy_name(Policy p) {
    switch (p) {
        case Policy::Hybrid: return "hybrid";
        case Policy::Lqr: return "lqr";
        case Policy::Swing: return "swing";
        case Policy::DatagenSwing: return "datagen-swing";
        case Policy::DatagenBalance: return "datagen-balance";
    }
    return "?";
}

EpisodeLog run_episode(const EpisodeConfig& cfg) {
    validate(cfg.params);
    if (!(cfg.f_s > 0.0) || !(cfg.duration > 0.0))
        throw std::invalid_argument("run_episode: f_s and duration must be > 0");
    const long rows = std::lround(cfg.duration * cfg.f_s);
    if (rows > 10'000'000) throw std::invalid_argument("run_episode: more than 1e7 rows");
    if (cfg.substeps < 1) throw std::invalid_argument("run_episode: substeps must be >= 1");
    if (!(cfg.smoothing > 0.0 && cfg.smoothing <= 1.0))
        throw std::invalid_argument("run_episode: smoothing must be in (0, 1]");

    const double dt_ctrl = 1.0 / cfg.f_s;
    const double dt_phys = dt_ctrl / cfg.substeps;
    const bool measured = cfg.input_mode == InputMode::Measured;

    const HybridConfig hybrid_cfg = make_hybrid_config(cfg.controller, cfg.K);
    const NoiseModel noise{cfg.sigma_deg, cfg.seed};
    SplitMix64 rng(cfg.seed);

    EpisodeLog log;
    log.rows.reserve(static_cast<std::size_t>(rows));

    State s = cfg.initial;
    VelocityFilterState vf;
    HybridState hybrid_state;
    PidState pid = cfg.controller.pid;

    for (long i = 0; i < rows; ++i) {
        const double t = cfg.t0 + static_cast<double>(i) * dt_ctrl;
        EpisodeRow row;
        row.t = t;
        const State w = wrapped(s);
        row.theta = w.theta;
        row.alpha = w.alpha;
        row.theta_dot = w.theta_dot;
        row.alpha_dot = w.alpha_dot;
        row.reward = reward(w);

        State x_in = s;
        if (measured) {
            const auto [theta_m, alpha_m] = corrupt_measurement(s, noise, rng);
            const VelocityEstimate est =
                velocity_step(vf, theta_m, alpha_m, dt_ctrl, cfg.smoothing);
            vf = est.next;
            x_in = State{theta_m, alpha_m, est.v_theta, est.v_alpha};
            row.has_meas = true;
            row.theta_meas = theta_m;
            row.alpha_meas = alpha_m;
        }

        double u_cmd = 0.0;
        HybridMode mode = HybridMode::Balance;
        switch (cfg.policy) {
            case Policy::Hybrid: {
                auto [u, hs] = hybrid_policy(x_in, hybrid_cfg, hybrid_state, cfg.params);
                u_cmd = u;
                hybrid_state = hs;
                mode = hs.mode;
                break;
            }
            case Policy::Lqr:
                u_cmd = lqr_control(cfg.K, x_in, State{});
                mode = HybridMode::Balance;
                break;
            case Policy::Swing:
                u_cmd = swing_up(x_in, cfg.controller.mu, cfg.params);
                mode = HybridMode::SwingUp;
                break;
            case Policy::DatagenSwing: {
                auto [u, next_pid] = datagen_swing(t, x_in, cfg.controller, pid, dt_ctrl,
                                                   cfg.params);
                pid = next_pid;
                u_cmd = u;
                mode = HybridMode::SwingUp;
                break;
            }
            case Policy::DatagenBalance:
                u_cmd = datagen_balance(t, x_in, cfg.controller, cfg.K);
                mode = HybridMode::Balance;
                break;
        }

        row.u_cmd = u_cmd;
        row.u_sat = saturate(u_cmd, cfg.controller.u_max);
        row.mode = mode;
        log.rows.push_back(row);

        try {
            for (int k = 0; k < cfg.substeps; ++k) s = step(s, row.u_sat, dt_phys, cfg.params);
        } catch (const IntegrationBlowup& e) {
            log.failed = true;
            log.failure = "integration blowup at t=" + std::to_string(t + dt_ctrl);
            log.final_state = e.state;
            return log;
        }
    }
    log.final_state = s;
    return log;
}

bool success_criterion(const EpisodeLog& log, double hold, double threshold) {
    if (log.rows.empty() || log.failed) return false;
    const double t_end = log.rows.back().t;
    const double t_start = log.rows.front().t;
    if (t_end - t_start < hold - 1e-9) return false;
    const double window = t_end - hold + 1e-9;
    for (auto it = log.rows.rbegin(); it != log.rows.rend(); ++it) {
        if (it->t < window) break;
        if (std::abs(it->alpha) >= threshold) return false;
    }
    return true;
}

namespace {

int resolve_threads(int requested) {
    int n = requested;
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* cap = std::getenv("FURUTA_BENCH_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) n = std::min(n, c);
    }
    return n;
}

/// Runs fn(0..n-1) on up to `threads` workers; any exception is rethrown.
void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::atomic<bool> died{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n || died.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lock(error_mutex);
                    if (!error) error = std::current_exception();
                    died.store(true);
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<SweepResult> aggregate(const std::vector<double>& grid, int trials,
                                   const std::vector<char>& success) {
    std::vector<SweepResult> results;
    results.reserve(grid.size());
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        SweepResult r;
        r.param = grid[gi];
        r.trials = trials;
        for (int ti = 0; ti < trials; ++ti)
            r.successes += success[gi * static_cast<std::size_t>(trials) +
                                   static_cast<std::size_t>(ti)];
        r.success_rate = trials > 0 ? static_cast<double>(r.successes) / trials : 0.0;
        results.push_back(r);
    }
    return results;
}

}  // namespace

NoiseSweepOutput noise_sweep(const EpisodeConfig& base, const SweepConfig& sweep) {
    if (sweep.trials < 1) throw std::invalid_argument("noise_sweep: trials must be >= 1");
    const auto& grid = sweep.sigmas_deg;
    std::vector<char> success(grid.size() * static_cast<std::size_t>(sweep.trials), 0);

    const int tasks = static_cast<int>(grid.size()) * sweep.trials;
    parallel_for(tasks, resolve_threads(sweep.threads), [&](int task) {
        const std::size_t gi = static_cast<std::size_t>(task) /
                               static_cast<std::size_t>(sweep.trials);
        const int ti = task % sweep.trials;
        EpisodeConfig cfg = base;
        cfg.policy = Policy::Hybrid;
        cfg.input_mode = sweep.noise_input_mode;
        cfg.sigma_deg = grid[gi];
        cfg.duration = sweep.noise_duration;
        cfg.initial = hanging_rest();
        cfg.seed = derive_stream(derive_stream(base.seed, gi), static_cast<std::uint64_t>(ti));
        const EpisodeLog log = run_episode(cfg);
        success[gi * static_cast<std::size_t>(sweep.trials) + static_cast<std::size_t>(ti)] =
            success_criterion(log, sweep.hold, sweep.success_alpha) ? 1 : 0;
    });

    NoiseSweepOutput out;
    out.results = aggregate(grid, sweep.trials, success);
    for (const SweepResult& r : out.results)
        if (r.success_rate >= 0.9) out.sigma_star = r.param;  // grid is ascending
    return out;
}

FrequencySweepOutput frequency_sweep(const EpisodeConfig& base, const SweepConfig& sweep) {
    if (sweep.trials < 1) throw std::invalid_argument("frequency_sweep: trials must be >= 1");
    const auto& grid = sweep.frequencies_hz;
    std::vector<char> success(grid.size() * static_cast<std::size_t>(sweep.trials), 0);

    const int tasks = static_cast<int>(grid.size()) * sweep.trials;
    parallel_for(tasks, resolve_threads(sweep.threads), [&](int task) {
        const std::size_t gi = static_cast<std::size_t>(task) /
                               static_cast<std::size_t>(sweep.trials);
        const int ti = task % sweep.trials;
        const std::uint64_t trial_seed =
            derive_stream(derive_stream(base.seed, gi), static_cast<std::uint64_t>(ti));

        SplitMix64 init_rng(derive_stream(trial_seed, 0));
        State initial{};
        initial.theta = init_rng.uniform(-sweep.freq_init_theta_jitter,
                                         sweep.freq_init_theta_jitter);
        initial.alpha = (init_rng.next_u64() & 1ull) ? sweep.freq_init_alpha
                                                     : -sweep.freq_init_alpha;

        EpisodeConfig cfg = base;
        cfg.policy = Policy::Lqr;
        cfg.input_mode = sweep.freq_input_mode;
        cfg.sigma_deg = 0.0;
        cfg.f_s = grid[gi];
        cfg.duration = sweep.freq_duration;
        cfg.initial = initial;
        cfg.seed = derive_stream(trial_seed, 1);
        bool ok = false;
        try {
            const EpisodeLog log = run_episode(cfg);
            ok = success_criterion(log, sweep.hold, sweep.success_alpha);
        } catch (const IntegrationBlowup&) {
            ok = false;
        }
        success[gi * static_cast<std::size_t>(sweep.trials) + static_cast<std::size_t>(ti)] =
            ok ? 1 : 0;
    });

    FrequencySweepOutput out;
    out.results = aggregate(grid, sweep.trials, success);
    for (auto it = out.results.rbegin(); it != out.results.rend(); ++it)
        if (it->success_rate >= 0.9) out.fs_min = it->param;  // smallest passing grid point
    return out;
}

StateHistogram make_histogram(const std::vector<DatasetSample>& samples, double bin_width_deg) {
    if (!(bin_width_deg > 0.0) ||
        std::abs(std::round(360.0 / bin_width_deg) * bin_width_deg - 360.0) > 1e-9)
        throw std::invalid_argument("histogram: bin width must divide 360 degrees");
    const int bins = static_cast<int>(std::round(360.0 / bin_width_deg));

    StateHistogram h;
    h.bin_width_deg = bin_width_deg;
    for (int i = 0; i <= bins; ++i) {
        h.theta_edges_deg.push_back(-180.0 + i * bin_width_deg);
        h.alpha_edges_deg.push_back(-180.0 + i * bin_width_deg);
    }
    h.counts.assign(static_cast<std::size_t>(bins),
                    std::vector<long>(static_cast<std::size_t>(bins), 0));

    const auto bin_of = [&](double angle_rad) {
        const double deg = rad_to_deg(wrap_angle(angle_rad));
        int b = static_cast<int>(std::floor((deg + 180.0) / bin_width_deg));
        return std::clamp(b, 0, bins - 1);  // +180 lands in the last bin
    };
    for (const DatasetSample& s : samples) {
        ++h.counts[static_cast<std::size_t>(bin_of(s.theta))]
                  [static_cast<std::size_t>(bin_of(s.alpha))];
        ++h.total;
    }
    return h;
}

namespace {

/// Appends rows of a log as dataset samples until `want` more are collected.
long take_samples(const EpisodeLog& log, long want, std::vector<DatasetSample>& out) {
    long taken = 0;
    for (const EpisodeRow& r : log.rows) {
        if (taken >= want) break;
        out.push_back({r.t, r.theta, r.alpha, r.theta_dot, r.alpha_dot, r.u_sat});
        ++taken;
    }
    return taken;
}

}  // namespace

CollectOutput collect_dataset(DatasetMode mode, const EpisodeConfig& base,
                              const CollectConfig& cc) {
    if (cc.target_count < 1 || cc.target_count > 10'000'000)
        throw std::invalid_argument("collect: target_count must be in [1, 1e7]");

    CollectOutput out;
    out.samples.reserve(static_cast<std::size_t>(cc.target_count));

    const auto run_stream = [&](Policy policy, long want) {
        // Chained fixed-length chunks on a continuous time base; the balance
        // stream restarts upright whenever a chunk ends fallen over.
        EpisodeConfig cfg = base;
        cfg.policy = policy;
        cfg.input_mode = InputMode::Privileged;
        cfg.sigma_deg = 0.0;
        cfg.duration = cc.chunk_duration;
        State cur = policy == Policy::DatagenBalance ? upright_rest() : hanging_rest();
        double t0 = 0.0;
        long got = 0;
        while (got < want) {
            cfg.initial = cur;
            cfg.t0 = t0;
            const EpisodeLog log = run_episode(cfg);
            got += take_samples(log, want - got, out.samples);
            t0 += cc.chunk_duration;
            cur = log.final_state;
            if (log.failed ||
                (policy == Policy::DatagenBalance &&
                 std::abs(wrap_angle(cur.alpha)) > cc.reset_alpha))
                cur = policy == Policy::DatagenBalance ? upright_rest() : hanging_rest();
        }
    };

    if (mode == DatasetMode::Unbiased) {
        run_stream(Policy::DatagenSwing, cc.target_count);
    } else {
        const long balance_quota =
            std::lround(cc.balance_fraction * static_cast<double>(cc.target_count));
        run_stream(Policy::DatagenBalance, balance_quota);
        run_stream(Policy::DatagenSwing, cc.target_count - balance_quota);
    }

    out.histogram = make_histogram(out.samples, cc.bin_width_deg);
    return out;
}

}  // namespace furuta
