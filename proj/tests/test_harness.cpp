#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "scmarl/errors.hpp"
#include "scmarl/harness.hpp"
#include "scmarl/rng.hpp"

using namespace scmarl;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_cfg() {
    ExperimentConfig cfg;
    cfg.env.t_max = 8;
    cfg.episodes = 4;
    cfg.eval_window = 2;
    cfg.seeds = {0, 1};
    cfg.ddpg.hidden_units = 8;
    cfg.ddpg.hidden_layers = 1;
    cfg.ddpg.batch_size = 8;
    cfg.ddpg.warmup = 16;
    return cfg;
}

EpisodeMetrics random_metrics(int episode, RngStream& rng) {
    EpisodeMetrics m;
    m.episode = episode;
    double raw_sum = 0.0, inc_sum = 0.0, shaped_sum = 0.0;
    for (int f = 0; f < kNumFactories; ++f) {
        m.profit_mean[f] = rng.normal(0.0, 1.0);
        m.raw_reward_mean[f] = rng.normal(0.5, 0.3);
        m.incentive_mean[f] = rng.uniform01() * 0.2;
        m.shaped_reward_mean[f] = m.raw_reward_mean[f] + m.incentive_mean[f];
        raw_sum += m.raw_reward_mean[f];
        inc_sum += m.incentive_mean[f];
        shaped_sum += m.shaped_reward_mean[f];
    }
    m.ofr_mean = rng.uniform01();
    m.ofr_reward_mean = rng.uniform01();
    for (int s = 0; s < kNumSuppliers; ++s) m.orders_mean[s] = rng.uniform01() * 99.0;
    m.manager_reward_mean = raw_sum - inc_sum;
    m.factory_score = shaped_sum / 3.0;
    m.raw_score = raw_sum / 3.0;
    m.manager_score = m.manager_reward_mean / 3.0;
    return m;
}

// Constant-valued, identity-consistent metrics for closed-form evaluation.
std::vector<EpisodeMetrics> constant_metrics(int episodes, double raw, double incentive) {
    std::vector<EpisodeMetrics> rows;
    for (int e = 0; e < episodes; ++e) {
        EpisodeMetrics m;
        m.episode = e;
        for (int f = 0; f < kNumFactories; ++f) {
            m.raw_reward_mean[f] = raw;
            m.incentive_mean[f] = incentive;
            m.shaped_reward_mean[f] = raw + incentive;
            m.profit_mean[f] = raw;
        }
        m.ofr_mean = 0.9;
        m.ofr_reward_mean = 1.0;
        m.orders_mean = {40.0 + e, 20.0};
        m.manager_reward_mean = 3.0 * (raw - incentive);
        m.factory_score = raw + incentive;
        m.raw_score = raw;
        m.manager_score = raw - incentive;
        rows.push_back(m);
    }
    return rows;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const char* name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("metrics filenames encode mode and seed") {
    CHECK(metrics_filename(Mode::naive, 0) == "metrics_naive_seed0.csv");
    CHECK(metrics_filename(Mode::managed, 17) == "metrics_managed_seed17.csv");
}

TEST_CASE("metrics CSV round-trips bit for bit") {
    RngStream rng(77);
    std::vector<EpisodeMetrics> rows;
    for (int e = 0; e < 25; ++e) rows.push_back(random_metrics(e, rng));

    TempDir dir("scmarl_harness_roundtrip");
    const std::string path = dir.file("metrics.csv");
    write_metrics_csv(path, rows);
    const std::vector<EpisodeMetrics> loaded = read_metrics_csv(path);
    REQUIRE(loaded.size() == rows.size());
    for (std::size_t e = 0; e < rows.size(); ++e) {
        CHECK(loaded[e].episode == rows[e].episode);
        CHECK(loaded[e].profit_mean == rows[e].profit_mean);
        CHECK(loaded[e].ofr_mean == rows[e].ofr_mean);
        CHECK(loaded[e].ofr_reward_mean == rows[e].ofr_reward_mean);
        CHECK(loaded[e].raw_reward_mean == rows[e].raw_reward_mean);
        CHECK(loaded[e].incentive_mean == rows[e].incentive_mean);
        CHECK(loaded[e].shaped_reward_mean == rows[e].shaped_reward_mean);
        CHECK(loaded[e].manager_reward_mean == rows[e].manager_reward_mean);
        CHECK(loaded[e].orders_mean == rows[e].orders_mean);
        CHECK(loaded[e].factory_score == rows[e].factory_score);
        CHECK(loaded[e].raw_score == rows[e].raw_score);
        CHECK(loaded[e].manager_score == rows[e].manager_score);
    }

    // Serializing the loaded rows reproduces the file byte for byte.
    CHECK(metrics_csv_string(loaded) == slurp(path));
}

TEST_CASE("metrics CSV reader rejects malformed files") {
    TempDir dir("scmarl_harness_badcsv");
    const std::string path = dir.file("bad.csv");

    std::ofstream(path) << "episode,not,the,right,header\n1,2,3,4,5\n";
    CHECK_THROWS_AS((void)read_metrics_csv(path), ConfigError);

    RngStream rng(3);
    write_metrics_csv(path, {random_metrics(0, rng)});
    std::string text = slurp(path);
    text.erase(text.rfind(',')); // drop the final cell of the only data row
    text += "\n";
    std::ofstream(path, std::ios::binary) << text;
    CHECK_THROWS_AS((void)read_metrics_csv(path), ConfigError);

    CHECK_THROWS_AS((void)read_metrics_csv(dir.file("missing.csv")), ConfigError);
}

TEST_CASE("evaluate pools eval windows and reports improvements") {
    ExperimentConfig cfg = tiny_cfg();
    cfg.episodes = 6;
    cfg.eval_window = 3;
    TempDir dir("scmarl_harness_eval");

    // Naive runs sit at raw 0.5; managed runs at raw 0.6 plus incentive 0.1.
    for (std::uint64_t seed : cfg.seeds) {
        write_metrics_csv(dir.file(metrics_filename(Mode::naive, seed)),
                          constant_metrics(cfg.episodes, 0.5, 0.0));
        write_metrics_csv(dir.file(metrics_filename(Mode::managed, seed)),
                          constant_metrics(cfg.episodes, 0.6, 0.1));
    }

    const EvaluationReport report = evaluate(cfg, dir.str());
    CHECK(report.eval_window == 3);
    CHECK(report.naive.episodes_pooled == 6); // 2 seeds x 3 episodes
    CHECK(report.naive.factory_mean == doctest::Approx(0.5));
    CHECK(report.naive.factory_std == doctest::Approx(0.0));
    CHECK(report.naive.raw_mean == doctest::Approx(0.5));
    CHECK(report.naive.manager_mean == doctest::Approx(0.5));
    CHECK(report.managed.factory_mean == doctest::Approx(0.7));
    CHECK(report.managed.raw_mean == doctest::Approx(0.6));
    CHECK(report.managed.manager_mean == doctest::Approx(0.5));
    CHECK(report.factory_improvement_pct == doctest::Approx(40.0));
    CHECK(report.raw_improvement_pct == doctest::Approx(20.0));
    CHECK(report.manager_improvement_pct == doctest::Approx(0.0));

    REQUIRE(report.managed.raw_by_seed.size() == 2);
    for (const auto& [seed, value] : report.managed.raw_by_seed)
        CHECK(value == doctest::Approx(0.6));
    // Orders: episodes 3..5 have orders_s0 43, 44, 45.
    CHECK(report.managed.orders_mean[0] == doctest::Approx(44.0));
    CHECK(report.managed.orders_mean[1] == doctest::Approx(20.0));

    const std::string text = report.to_text();
    CHECK(text.find("factory score") != std::string::npos);
    const std::string csv = report.to_csv();
    CHECK(csv.find("improvement_pct") != std::string::npos);
    CHECK(csv.find("factory_score") != std::string::npos);
}

TEST_CASE("evaluate rejects short or identity-violating metrics") {
    ExperimentConfig cfg = tiny_cfg();
    cfg.seeds = {0};
    cfg.episodes = 4;
    cfg.eval_window = 2;
    TempDir dir("scmarl_harness_evalbad");

    write_metrics_csv(dir.file(metrics_filename(Mode::naive, 0)), constant_metrics(1, 0.5, 0.0));
    CHECK_THROWS_AS((void)evaluate_mode(cfg, dir.str(), Mode::naive), ConfigError);

    std::vector<EpisodeMetrics> rows = constant_metrics(4, 0.5, 0.0);
    rows[3].manager_score = 0.9; // breaks manager = raw - incentive
    write_metrics_csv(dir.file(metrics_filename(Mode::naive, 0)), rows);
    CHECK_THROWS_AS((void)evaluate_mode(cfg, dir.str(), Mode::naive), ConfigError);

    CHECK_THROWS_AS((void)evaluate_mode(cfg, dir.str(), Mode::managed), ConfigError);
}

TEST_CASE("action distribution averages across seeds, then the eval window") {
    ExperimentConfig cfg = tiny_cfg();
    cfg.episodes = 4;
    cfg.eval_window = 2;
    cfg.seeds = {0, 1};
    TempDir dir("scmarl_harness_actions");

    // Seed 0 orders 40+e, seed 1 orders 40+e as well (constant_metrics).
    for (std::uint64_t seed : cfg.seeds)
        write_metrics_csv(dir.file(metrics_filename(Mode::naive, seed)),
                          constant_metrics(cfg.episodes, 0.5, 0.0));

    const ActionDistribution dist = action_distribution(cfg, dir.str(), {Mode::naive});
    REQUIRE(dist.naive_per_episode.size() == 4);
    CHECK(dist.naive_per_episode[0][0] == doctest::Approx(40.0));
    CHECK(dist.naive_per_episode[3][0] == doctest::Approx(43.0));
    CHECK(dist.naive_per_episode[2][1] == doctest::Approx(20.0));
    CHECK(dist.naive_eval_mean[0] == doctest::Approx(42.5)); // episodes 2 and 3
    CHECK(dist.naive_eval_mean[1] == doctest::Approx(20.0));
    CHECK(dist.managed_per_episode.empty());
}

TEST_CASE("run_experiment writes one reproducible CSV per (mode, seed)") {
    const ExperimentConfig cfg = tiny_cfg();
    TempDir dir_a("scmarl_harness_run_a");
    TempDir dir_b("scmarl_harness_run_b");

    const std::vector<RunSummary> summaries =
        run_experiment(cfg, {Mode::naive, Mode::managed}, dir_a.str(), 1, false, nullptr);
    REQUIRE(summaries.size() == 4); // 2 modes x 2 seeds
    for (const RunSummary& s : summaries) {
        CHECK(fs::exists(s.metrics_path));
        CHECK(read_metrics_csv(s.metrics_path).size() == 4);
    }
    CHECK(fs::exists(dir_a.path / "config_used.cfg"));

    // Same config, two worker threads: byte-identical metrics files.
    run_experiment(cfg, {Mode::naive, Mode::managed}, dir_b.str(), 2, false, nullptr);
    for (Mode mode : {Mode::naive, Mode::managed})
        for (std::uint64_t seed : cfg.seeds) {
            const std::string name = metrics_filename(mode, seed);
            CHECK(slurp(dir_a.file(name)) == slurp(dir_b.file(name)));
        }

    // The evaluation pipeline accepts real training output.
    const EvaluationReport report = evaluate(cfg, dir_a.str());
    CHECK(report.naive.episodes_pooled == 4);
    CHECK(std::isfinite(report.factory_improvement_pct));
}

TEST_CASE("the fast invariant checks all pass") {
    const std::vector<CheckResult> results = run_fast_checks(ExperimentConfig{});
    REQUIRE(results.size() == 5);
    for (const CheckResult& r : results) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.pass);
    }
}
