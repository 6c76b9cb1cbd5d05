#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "scmarl/config.hpp"
#include "scmarl/ddpg.hpp"

namespace scmarl {

std::string metrics_filename(Mode mode, std::uint64_t seed);
std::string metrics_csv_string(const std::vector<EpisodeMetrics>& rows);
void write_metrics_csv(const std::string& path, const std::vector<EpisodeMetrics>& rows);
std::vector<EpisodeMetrics> read_metrics_csv(const std::string& path);

struct RunSummary {
    Mode mode = Mode::naive;
    std::uint64_t seed = 0;
    std::string metrics_path;
    double final_factory_score = 0.0;
};

// Trains every (mode, seed) combination and writes one metrics CSV per run
// under out_dir (plus a config snapshot). `jobs` worker threads; each run is
// self-contained, so results are identical for any jobs value. Progress lines
// go to `log` when non-null.
std::vector<RunSummary> run_experiment(const ExperimentConfig& cfg,
                                       const std::vector<Mode>& modes, const std::string& out_dir,
                                       int jobs, bool save_checkpoints, std::ostream* log);

struct ModeStats {
    double factory_mean = 0.0, factory_std = 0.0;
    double raw_mean = 0.0, raw_std = 0.0;
    double manager_mean = 0.0, manager_std = 0.0;
    std::array<double, kNumSuppliers> orders_mean{};
    // Eval-window means per seed, for per-seed directional comparisons.
    std::vector<std::pair<std::uint64_t, double>> raw_by_seed;
    std::vector<std::pair<std::uint64_t, double>> factory_by_seed;
    int episodes_pooled = 0;
};

struct EvaluationReport {
    ModeStats naive;
    ModeStats managed;
    int eval_window = 0;
    // Relative improvements of managed over naive, in percent.
    double factory_improvement_pct = 0.0;
    double raw_improvement_pct = 0.0;
    double manager_improvement_pct = 0.0;
    std::string to_text() const;
    std::string to_csv() const;
};

// Pools the last eval_window episodes of every seed, both modes. Statistics
// are mean and population std over the pooled (seed x episode) sample.
// Throws when a metrics file is missing, too short, or violates the
// score-accounting identity.
EvaluationReport evaluate(const ExperimentConfig& cfg, const std::string& dir);
// Single-mode variant used internally and by tests.
ModeStats evaluate_mode(const ExperimentConfig& cfg, const std::string& dir, Mode mode);

struct ActionDistribution {
    // Per episode, averaged across seeds: mean orders per supplier.
    std::vector<std::array<double, kNumSuppliers>> naive_per_episode;
    std::vector<std::array<double, kNumSuppliers>> managed_per_episode;
    std::array<double, kNumSuppliers> naive_eval_mean{};
    std::array<double, kNumSuppliers> managed_eval_mean{};
};

ActionDistribution action_distribution(const ExperimentConfig& cfg, const std::string& dir,
                                       const std::vector<Mode>& modes);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fast self-contained invariant suite: environment fuzz, reward oracle,
// manager algebra, gradient checks, learner smoke oracle.
std::vector<CheckResult> run_fast_checks(const ExperimentConfig& cfg);

}  // namespace scmarl
