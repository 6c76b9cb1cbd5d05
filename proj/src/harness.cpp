#include "scmarl/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "scmarl/errors.hpp"
#include "scmarl/game.hpp"

namespace scmarl {

namespace fs = std::filesystem;

namespace {

constexpr const char* kMetricsHeader =
    "episode,profit_f0,profit_f1,profit_f2,ofr,ofr_reward,"
    "raw_f0,raw_f1,raw_f2,incentive_f0,incentive_f1,incentive_f2,"
    "shaped_f0,shaped_f1,shaped_f2,manager_reward,orders_s0,orders_s1,"
    "factory_score,raw_score,manager_score";

void append_double(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), ",%.17g", v);
    out += buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double mean_of(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double std_of(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size()));
}

double pct_gain(double managed, double naive) {
    return naive == 0.0 ? 0.0 : (managed - naive) / std::abs(naive) * 100.0;
}

}  // namespace

std::string metrics_filename(Mode mode, std::uint64_t seed) {
    return std::string("metrics_") + mode_name(mode) + "_seed" + std::to_string(seed) + ".csv";
}

std::string metrics_csv_string(const std::vector<EpisodeMetrics>& rows) {
    std::string out(kMetricsHeader);
    out += "\n";
    for (const EpisodeMetrics& m : rows) {
        out += std::to_string(m.episode);
        for (double v : m.profit_mean) append_double(out, v);
        append_double(out, m.ofr_mean);
        append_double(out, m.ofr_reward_mean);
        for (double v : m.raw_reward_mean) append_double(out, v);
        for (double v : m.incentive_mean) append_double(out, v);
        for (double v : m.shaped_reward_mean) append_double(out, v);
        append_double(out, m.manager_reward_mean);
        for (double v : m.orders_mean) append_double(out, v);
        append_double(out, m.factory_score);
        append_double(out, m.raw_score);
        append_double(out, m.manager_score);
        out += "\n";
    }
    return out;
}

void write_metrics_csv(const std::string& path, const std::vector<EpisodeMetrics>& rows) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write metrics file: " + path);
        out << metrics_csv_string(rows);
        if (!out) throw std::runtime_error("short write on metrics file: " + path);
    }
    fs::rename(tmp, path);
}

std::vector<EpisodeMetrics> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open metrics file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader)
        throw ConfigError("unexpected metrics header in " + path);
    std::vector<EpisodeMetrics> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != 21)
            throw ConfigError("malformed metrics row in " + path + ": " + line);
        EpisodeMetrics m;
        std::size_t i = 0;
        m.episode = std::stoi(cells[i++]);
        for (double& v : m.profit_mean) v = std::stod(cells[i++]);
        m.ofr_mean = std::stod(cells[i++]);
        m.ofr_reward_mean = std::stod(cells[i++]);
        for (double& v : m.raw_reward_mean) v = std::stod(cells[i++]);
        for (double& v : m.incentive_mean) v = std::stod(cells[i++]);
        for (double& v : m.shaped_reward_mean) v = std::stod(cells[i++]);
        m.manager_reward_mean = std::stod(cells[i++]);
        for (double& v : m.orders_mean) v = std::stod(cells[i++]);
        m.factory_score = std::stod(cells[i++]);
        m.raw_score = std::stod(cells[i++]);
        m.manager_score = std::stod(cells[i++]);
        rows.push_back(std::move(m));
    }
    return rows;
}

std::vector<RunSummary> run_experiment(const ExperimentConfig& cfg,
                                       const std::vector<Mode>& modes, const std::string& out_dir,
                                       int jobs, bool save_checkpoints, std::ostream* log) {
    cfg.validate();
    if (jobs < 1) throw ConfigError("jobs must be at least 1");
    fs::create_directories(out_dir);
    {
        std::ofstream snap(fs::path(out_dir) / "config_used.cfg");
        snap << cfg.to_key_values();
    }

    struct Task {
        Mode mode;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (Mode mode : modes)
        for (std::uint64_t seed : cfg.seeds) tasks.push_back({mode, seed});

    std::vector<RunSummary> summaries(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex log_mutex;

    auto worker = [&] {
        while (true) {
            const std::size_t k = cursor.fetch_add(1);
            if (k >= tasks.size()) break;
            const Task& task = tasks[k];
            Trainer trainer(cfg, task.mode, task.seed);
            std::vector<EpisodeMetrics> rows;
            rows.reserve(static_cast<std::size_t>(cfg.episodes));
            for (int e = 0; e < cfg.episodes; ++e) {
                rows.push_back(trainer.train_episode());
                if (log && ((e + 1) % 25 == 0 || e + 1 == cfg.episodes)) {
                    std::lock_guard<std::mutex> hold(log_mutex);
                    char buf[160];
                    std::snprintf(buf, sizeof(buf),
                                  "[%s seed %llu] episode %d/%d factory_score %.4f\n",
                                  mode_name(task.mode),
                                  static_cast<unsigned long long>(task.seed), e + 1,
                                  cfg.episodes, rows.back().factory_score);
                    (*log) << buf << std::flush;
                }
            }
            const std::string path = (fs::path(out_dir) / metrics_filename(task.mode, task.seed)).string();
            write_metrics_csv(path, rows);
            if (save_checkpoints) {
                const std::string ckpt_dir =
                    (fs::path(out_dir) / "checkpoints" /
                     (std::string(mode_name(task.mode)) + "_seed" + std::to_string(task.seed)))
                        .string();
                trainer.save_checkpoints(ckpt_dir);
            }
            summaries[k] = {task.mode, task.seed, path, rows.back().factory_score};
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int n = std::min<int>(jobs, static_cast<int>(tasks.size()));
        for (int i = 0; i < n; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    return summaries;
}

ModeStats evaluate_mode(const ExperimentConfig& cfg, const std::string& dir, Mode mode) {
    ModeStats stats;
    std::vector<double> factory, raw, manager;
    std::array<double, kNumSuppliers> orders_sum{};
    for (std::uint64_t seed : cfg.seeds) {
        const std::string path = (fs::path(dir) / metrics_filename(mode, seed)).string();
        const std::vector<EpisodeMetrics> rows = read_metrics_csv(path);
        if (static_cast<int>(rows.size()) < cfg.eval_window)
            throw ConfigError(path + ": has " + std::to_string(rows.size()) +
                                     " episodes, need at least " +
                                     std::to_string(cfg.eval_window));
        double seed_raw = 0.0, seed_factory = 0.0;
        for (std::size_t i = rows.size() - static_cast<std::size_t>(cfg.eval_window);
             i < rows.size(); ++i) {
            const EpisodeMetrics& m = rows[i];
            const double incentive_per_agent =
                (m.incentive_mean[0] + m.incentive_mean[1] + m.incentive_mean[2]) /
                static_cast<double>(kNumFactories);
            if (std::abs(m.manager_score - (m.raw_score - incentive_per_agent)) > 1e-9)
                throw ConfigError(path + ": score accounting identity violated at episode " +
                                         std::to_string(m.episode));
            if (std::abs(m.factory_score - (m.raw_score + incentive_per_agent)) > 1e-9)
                throw ConfigError(path + ": shaped-score identity violated at episode " +
                                         std::to_string(m.episode));
            factory.push_back(m.factory_score);
            raw.push_back(m.raw_score);
            manager.push_back(m.manager_score);
            seed_raw += m.raw_score;
            seed_factory += m.factory_score;
            for (int s = 0; s < kNumSuppliers; ++s) orders_sum[s] += m.orders_mean[s];
        }
        stats.raw_by_seed.emplace_back(seed, seed_raw / cfg.eval_window);
        stats.factory_by_seed.emplace_back(seed, seed_factory / cfg.eval_window);
    }
    stats.episodes_pooled = static_cast<int>(factory.size());
    stats.factory_mean = mean_of(factory);
    stats.factory_std = std_of(factory);
    stats.raw_mean = mean_of(raw);
    stats.raw_std = std_of(raw);
    stats.manager_mean = mean_of(manager);
    stats.manager_std = std_of(manager);
    for (int s = 0; s < kNumSuppliers; ++s)
        stats.orders_mean[s] = orders_sum[s] / static_cast<double>(stats.episodes_pooled);
    return stats;
}

EvaluationReport evaluate(const ExperimentConfig& cfg, const std::string& dir) {
    EvaluationReport report;
    report.eval_window = cfg.eval_window;
    report.naive = evaluate_mode(cfg, dir, Mode::naive);
    report.managed = evaluate_mode(cfg, dir, Mode::managed);
    report.factory_improvement_pct = pct_gain(report.managed.factory_mean, report.naive.factory_mean);
    report.raw_improvement_pct = pct_gain(report.managed.raw_mean, report.naive.factory_mean);
    report.manager_improvement_pct = pct_gain(report.managed.manager_mean, report.naive.manager_mean);
    return report;
}

std::string EvaluationReport::to_text() const {
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof(buf),
                  "Scores over the last %d episodes, pooled over seeds (mean +/- pooled std)\n",
                  eval_window);
    out += buf;
    auto row = [&](const char* name, double nm, double ns, double mm, double ms, double pct) {
        std::snprintf(buf, sizeof(buf), "  %-14s naive %7.4f +/- %.4f   managed %7.4f +/- %.4f   (%+.1f%%)\n",
                      name, nm, ns, mm, ms, pct);
        out += buf;
    };
    row("factory score", naive.factory_mean, naive.factory_std, managed.factory_mean,
        managed.factory_std, factory_improvement_pct);
    row("raw score", naive.raw_mean, naive.raw_std, managed.raw_mean, managed.raw_std,
        raw_improvement_pct);
    row("manager score", naive.manager_mean, naive.manager_std, managed.manager_mean,
        managed.manager_std, manager_improvement_pct);
    std::snprintf(buf, sizeof(buf),
                  "  mean orders    naive s0 %.2f s1 %.2f        managed s0 %.2f s1 %.2f\n",
                  naive.orders_mean[0], naive.orders_mean[1], managed.orders_mean[0],
                  managed.orders_mean[1]);
    out += buf;
    return out;
}

std::string EvaluationReport::to_csv() const {
    std::string out = "metric,naive_mean,naive_std,managed_mean,managed_std,improvement_pct\n";
    char buf[256];
    auto row = [&](const char* name, double nm, double ns, double mm, double ms, double pct) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g,%.17g,%.17g\n", name, nm, ns, mm, ms,
                      pct);
        out += buf;
    };
    row("factory_score", naive.factory_mean, naive.factory_std, managed.factory_mean,
        managed.factory_std, factory_improvement_pct);
    row("raw_score", naive.raw_mean, naive.raw_std, managed.raw_mean, managed.raw_std,
        raw_improvement_pct);
    row("manager_score", naive.manager_mean, naive.manager_std, managed.manager_mean,
        managed.manager_std, manager_improvement_pct);
    std::snprintf(buf, sizeof(buf), "orders_s0,%.17g,,%.17g,,\norders_s1,%.17g,,%.17g,,\n",
                  naive.orders_mean[0], managed.orders_mean[0], naive.orders_mean[1],
                  managed.orders_mean[1]);
    out += buf;
    return out;
}

ActionDistribution action_distribution(const ExperimentConfig& cfg, const std::string& dir,
                                       const std::vector<Mode>& modes) {
    ActionDistribution dist;
    for (Mode mode : modes) {
        std::vector<std::array<double, kNumSuppliers>> per_episode;
        std::array<double, kNumSuppliers> eval_sum{};
        long eval_count = 0;
        for (std::uint64_t seed : cfg.seeds) {
            const std::string path = (fs::path(dir) / metrics_filename(mode, seed)).string();
            const std::vector<EpisodeMetrics> rows = read_metrics_csv(path);
            if (per_episode.empty())
                per_episode.assign(rows.size(), std::array<double, kNumSuppliers>{});
            if (per_episode.size() != rows.size())
                throw ConfigError(path + ": episode count differs from other seeds");
            for (std::size_t e = 0; e < rows.size(); ++e)
                for (int s = 0; s < kNumSuppliers; ++s)
                    per_episode[e][s] += rows[e].orders_mean[s] / static_cast<double>(cfg.seeds.size());
            for (std::size_t e = rows.size() - static_cast<std::size_t>(
                                    std::min<int>(cfg.eval_window, static_cast<int>(rows.size())));
                 e < rows.size(); ++e) {
                for (int s = 0; s < kNumSuppliers; ++s) eval_sum[s] += rows[e].orders_mean[s];
                eval_count += 1;
            }
        }
        std::array<double, kNumSuppliers> eval_mean{};
        for (int s = 0; s < kNumSuppliers; ++s)
            eval_mean[s] = eval_count ? eval_sum[s] / static_cast<double>(eval_count) : 0.0;
        if (mode == Mode::naive) {
            dist.naive_per_episode = std::move(per_episode);
            dist.naive_eval_mean = eval_mean;
        } else {
            dist.managed_per_episode = std::move(per_episode);
            dist.managed_eval_mean = eval_mean;
        }
    }
    return dist;
}

namespace {

CheckResult check_env_fuzz(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RngStream rng = RngStream::substream(2024, "fuzz-actions", 0);
    long steps_done = 0, violations = 0;
    std::string first_violation;
    auto violate = [&](const std::string& what) {
        violations += 1;
        if (first_violation.empty()) first_violation = what;
    };
    std::uint64_t episode = 0;
    while (steps_done < 10000) {
        SupplyChainState env = reset(cfg.env, episode);
        SupplyChainState twin = env;
        std::array<long, kNumSuppliers> ordered{}, delivered{};
        std::array<long, kNumFactories> assembled{}, shipped{}, delivered_f{};
        while (!env.terminal() && steps_done < 10000) {
            JointAction act{};
            for (int f = 0; f < kNumFactories; ++f)
                for (int s = 0; s < kNumSuppliers; ++s) act[f][s] = rng.uniform_int(0, kMaxOrder);
            const StepOutcome out = step(env, act);
            const StepOutcome twin_out = step(twin, act);
            if (!(twin == env)) violate("determinism: twin state diverged");
            if (twin_out.total_reward != out.total_reward)
                violate("determinism: twin rewards diverged");
            if (out.ofr < 0.0 || out.ofr > 1.0) violate("ofr outside [0,1]");
            for (int s = 0; s < kNumSuppliers; ++s) {
                for (int day = 0; day < kDaysPerStep; ++day)
                    if (out.delivered_per_day[s][day] > cfg.env.supplier_capacity[s])
                        violate("per-day delivery exceeds capacity");
                for (int f = 0; f < kNumFactories; ++f) {
                    ordered[s] += act[f][s];
                    delivered[s] += out.delivered[s][f];
                    delivered_f[f] += out.delivered[s][f];
                }
            }
            for (int f = 0; f < kNumFactories; ++f) {
                assembled[f] += out.assembled[f];
                shipped[f] += out.shipped[f];
                if (out.shipped_on_time[f] > out.new_orders[f])
                    violate("on-time exceeds orders received");
                if (out.shipped_on_time[f] > out.shipped[f]) violate("on-time exceeds shipped");
            }
            steps_done += 1;
        }
        for (int s = 0; s < kNumSuppliers; ++s) {
            long backlog = 0;
            for (int f = 0; f < kNumFactories; ++f) backlog += env.suppliers[s].backlog[f];
            if (ordered[s] != delivered[s] + backlog) violate("parts conservation");
        }
        for (int f = 0; f < kNumFactories; ++f) {
            if (assembled[f] != shipped[f] + env.factories[f].stock)
                violate("item conservation");
            if (delivered_f[f] != assembled[f] + env.factories[f].parts_awaiting())
                violate("delivery/assembly conservation");
        }
        episode += 1;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%ld steps, %ld violations%s%s, %.2f s (budget 10 s)",
                  steps_done, violations, first_violation.empty() ? "" : ": ",
                  first_violation.c_str(), secs);
    return {"environment property fuzz", violations == 0 && secs < 10.0, buf};
}

CheckResult check_reward_oracle(const ExperimentConfig& cfg) {
    RngStream rng = RngStream::substream(2024, "reward-oracle", 0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int shipped = rng.uniform_int(0, 500);
        const std::array<int, kNumSuppliers> orders{rng.uniform_int(0, 99), rng.uniform_int(0, 99)};
        const int inventory = rng.uniform_int(0, 1000);
        // Independent integer-arithmetic recomputation with the published constants.
        const long numerator = 10L * shipped - 2L * orders[0] - 5L * orders[1] - inventory - 400L;
        const double expected = static_cast<double>(numerator) / 300.0;
        const double got = profit_reward(shipped, orders, inventory, cfg.env);
        worst = std::max(worst, std::abs(got - expected));

        const long on_time = rng.uniform_int(0, 300);
        const long total = on_time + rng.uniform_int(0, 300);
        const double ofr = compute_ofr(on_time, total);
        const int expected_flag = ofr >= 0.8 ? 1 : 0;
        if (ofr_reward(ofr, cfg.env.ofr_target) != expected_flag)
            return {"reward formula oracle", false, "ofr_reward mismatch"};
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "1000 tuples, max |err| = %.3g (tolerance 1e-12)", worst);
    return {"reward formula oracle", worst <= 1e-12, buf};
}

CheckResult check_manager_algebra(const ExperimentConfig& cfg) {
    RngStream rng = RngStream::substream(2024, "algebra", 0);
    EnvParams env = cfg.env;
    env.t_max = 52;
    double worst_identity = 0.0;
    bool reduction_ok = true;
    for (int ep = 0; ep < 100; ++ep) {
        // Random-policy mediated episode: the Eq.-4 identity must hold each step.
        MediatedGame game(env, static_cast<std::uint64_t>(ep), cfg.incentive_scale);
        // Zero-manager twin against the bare environment: bit-identical reduction.
        MediatedGame zero_game(env, static_cast<std::uint64_t>(ep), cfg.incentive_scale);
        SupplyChainState bare = reset(env, static_cast<std::uint64_t>(ep));
        while (!game.state().terminal()) {
            ManagerAction aux{};
            JointAction act{};
            for (int f = 0; f < kNumFactories; ++f)
                for (int s = 0; s < kNumSuppliers; ++s) {
                    aux[f][s] = rng.uniform01();
                    act[f][s] = rng.uniform_int(0, kMaxOrder);
                }
            const MediatedStepResult res = game.step(aux, act);
            double sum_raw = 0.0, sum_shaped = 0.0, sum_inc = 0.0;
            for (int f = 0; f < kNumFactories; ++f) {
                sum_raw += res.raw_rewards[f];
                sum_shaped += res.shaped_rewards[f];
                sum_inc += res.incentives[f];
                if (res.incentives[f] < 0.0) reduction_ok = false;
            }
            worst_identity = std::max(worst_identity,
                                      std::abs(res.manager_reward + sum_inc - sum_raw));
            worst_identity = std::max(worst_identity, std::abs((sum_shaped - sum_inc) - sum_raw));

            const MediatedStepResult zres = zero_game.step(ManagerAction{}, act);
            const StepOutcome bout = step(bare, act);
            if (!(zero_game.state() == bare) || zres.raw_rewards != bout.total_reward ||
                zres.shaped_rewards != bout.total_reward ||
                zres.manager_reward !=
                    bout.total_reward[0] + bout.total_reward[1] + bout.total_reward[2])
                reduction_ok = false;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "100 episodes, max identity residual %.3g (tolerance 1e-9), zero-manager reduction %s",
                  worst_identity, reduction_ok ? "bit-identical" : "DIVERGED");
    return {"manager accounting algebra", worst_identity <= 1e-9 && reduction_ok, buf};
}

CheckResult check_gradients(const ExperimentConfig&) {
    RngStream rng = RngStream::substream(2024, "grad", 0);
    const std::vector<std::pair<std::vector<int>, Head>> shapes = {
        {{4, 8, 8, 2}, Head::squash},
        {{6, 16, 1}, Head::identity},
        {{3, 5, 5, 5, 2}, Head::squash},
    };
    double worst = 0.0;
    for (const auto& [dims, head] : shapes) {
        Mlp net = Mlp::init(dims, head, rng);
        std::vector<double> input(static_cast<std::size_t>(dims.front()));
        for (double& x : input) x = rng.normal(0.0, 1.0);
        worst = std::max(worst, finite_difference_check(net, input, 7).max_rel_error);
    }
    // The check must be able to fail: a doubled gradient entry has to trip it.
    Mlp net = Mlp::init({4, 8, 8, 2}, Head::squash, rng);
    std::vector<double> input{0.3, -0.7, 1.1, 0.2};
    const double corrupted =
        finite_difference_check(net, input, 7, 1e-4, /*corrupt_largest=*/true).max_rel_error;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "max rel err %.3g (tolerance 1e-4); fault-injected err %.3g (must exceed 1e-2)",
                  worst, corrupted);
    return {"finite-difference gradient check", worst < 1e-4 && corrupted > 1e-2, buf};
}

CheckResult check_learner_smoke(const ExperimentConfig&) {
    // Critic regression to a constant target on a tiny net.
    DdpgParams hp;
    hp.hidden_units = 8;
    hp.hidden_layers = 2;
    hp.batch_size = 4;
    hp.warmup = 1;
    hp.gamma = 0.0;
    hp.critic_lr = 0.02;
    RngStream init = RngStream::substream(2024, "smoke-init", 0);
    DdpgAgent agent(4, 2, hp, init);
    Transition tr;
    tr.obs = {0.1, -0.4, 0.7, 0.2};
    tr.action = {0.3, 0.9};
    tr.reward = 1.0;
    tr.next_obs = tr.obs;
    tr.terminal = true;
    std::vector<const Transition*> batch(static_cast<std::size_t>(hp.batch_size), &tr);
    double first_loss = 0.0, last_loss = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto stats = agent.update_batch(batch);
        if (i == 0) first_loss = stats.critic_loss;
        last_loss = stats.critic_loss;
    }
    const bool regression_ok = first_loss > 0.0 && last_loss <= 0.01 * first_loss;

    // Exhaustive quantization grid over [0,1].
    bool quant_ok = true;
    int prev = 0;
    for (int k = 0; k <= 1000; ++k) {
        const double x = static_cast<double>(k) / 1000.0;
        const int q = quantize_component(x);
        if (q < 0 || q > 99) quant_ok = false;
        if (x < 1.0 && !(q <= x * 100.0 && x * 100.0 < q + 1)) quant_ok = false;
        if (x == 1.0 && q != 99) quant_ok = false;
        if (q < prev) quant_ok = false;
        prev = q;
    }
    quant_ok = quant_ok && quantize_component(0.0) == 0 && quantize_component(0.999) == 99 &&
               quantize_component(1.0) == 99;

    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "critic loss %.3g -> %.3g over 200 updates (need 99%% drop); 1001-point quantize grid %s",
                  first_loss, last_loss, quant_ok ? "exact" : "VIOLATED");
    return {"learner smoke oracle", regression_ok && quant_ok, buf};
}

}  // namespace

std::vector<CheckResult> run_fast_checks(const ExperimentConfig& cfg) {
    return {
        check_env_fuzz(cfg),
        check_reward_oracle(cfg),
        check_manager_algebra(cfg),
        check_gradients(cfg),
        check_learner_smoke(cfg),
    };
}

}  // namespace scmarl
