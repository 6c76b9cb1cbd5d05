#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "scmarl/config.hpp"
#include "scmarl/errors.hpp"
#include "scmarl/game.hpp"
#include "scmarl/harness.hpp"

namespace {

using namespace scmarl;

ExperimentConfig load_config(const std::string& path) {
    if (path.empty()) return ExperimentConfig{};
    return ExperimentConfig::from_file(path);
}

std::vector<Mode> parse_modes(const std::string& mode) {
    if (mode == "naive") return {Mode::naive};
    if (mode == "managed") return {Mode::managed};
    if (mode == "both") return {Mode::naive, Mode::managed};
    throw ConfigError("mode must be naive, managed or both, got '" + mode + "'");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

void write_actions_csv(const std::string& path,
                       const std::vector<std::array<double, kNumSuppliers>>& rows) {
    std::string text = "episode,orders_s0,orders_s1\n";
    char buf[96];
    for (std::size_t e = 0; e < rows.size(); ++e) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", e, rows[e][0], rows[e][1]);
        text += buf;
    }
    write_text_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supply-chain multi-agent RL: naive vs. manager-mediated training"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode = "both";
    std::string seeds_arg;
    std::string out_dir = "results";
    int episodes_override = -1;
    int jobs = 1;
    bool checkpoints = false;
    std::string schema_out;

    auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
        cmd->add_option("--config", config_path, "key=value config file (defaults built in)");
        cmd->add_option("--out", out_dir, "results directory")->capture_default_str();
        cmd->add_option("--mode", mode, "naive|managed|both")->capture_default_str();
        if (with_run_flags) {
            cmd->add_option("--seeds", seeds_arg, "seed list: a..b or comma separated");
            cmd->add_option("--episodes", episodes_override, "episodes per run");
        }
    };

    CLI::App* run_cmd = app.add_subcommand("run", "train every (mode, seed) pair");
    add_common(run_cmd, true);
    run_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();
    run_cmd->add_flag("--checkpoints", checkpoints, "save network checkpoints");

    CLI::App* eval_cmd = app.add_subcommand("evaluate", "score report from metrics files");
    add_common(eval_cmd, true);

    CLI::App* actions_cmd =
        app.add_subcommand("actions", "per-supplier order volumes from metrics files");
    add_common(actions_cmd, true);

    CLI::App* check_cmd = app.add_subcommand("check", "run the invariant suite");
    check_cmd->add_option("--config", config_path, "key=value config file (defaults built in)");
    check_cmd->add_option("--schema-out", schema_out, "also dump the observation schema CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg = load_config(config_path);
        if (!seeds_arg.empty()) cfg.seeds = parse_seed_list(seeds_arg);
        if (episodes_override > 0) {
            cfg.episodes = episodes_override;
            cfg.eval_window = std::min(cfg.eval_window, cfg.episodes);
        }
        cfg.validate();

        if (run_cmd->parsed()) {
            const std::vector<RunSummary> summaries =
                run_experiment(cfg, parse_modes(mode), out_dir, jobs, checkpoints, &std::cerr);
            for (const RunSummary& s : summaries)
                std::cout << s.metrics_path << " final factory_score "
                          << s.final_factory_score << "\n";
            return 0;
        }
        if (eval_cmd->parsed()) {
            const EvaluationReport report = evaluate(cfg, out_dir);
            std::cout << report.to_text();
            const std::string path =
                (std::filesystem::path(out_dir) / "report.csv").string();
            write_text_file(path, report.to_csv());
            std::cout << "report written to " << path << "\n";
            return 0;
        }
        if (actions_cmd->parsed()) {
            const std::vector<Mode> modes = parse_modes(mode);
            const ActionDistribution dist = action_distribution(cfg, out_dir, modes);
            for (Mode m : modes) {
                const bool naive = m == Mode::naive;
                const auto& rows = naive ? dist.naive_per_episode : dist.managed_per_episode;
                const auto& eval = naive ? dist.naive_eval_mean : dist.managed_eval_mean;
                const std::string path =
                    (std::filesystem::path(out_dir) /
                     (std::string("actions_") + mode_name(m) + ".csv"))
                        .string();
                write_actions_csv(path, rows);
                std::printf("%s eval-window mean orders: supplier0 %.2f supplier1 %.2f (%s)\n",
                            mode_name(m), eval[0], eval[1], path.c_str());
            }
            return 0;
        }
        if (check_cmd->parsed()) {
            if (!schema_out.empty()) {
                write_text_file(schema_out, agent_observation_schema(cfg.env).to_csv());
                std::cout << "observation schema written to " << schema_out << "\n";
            }
            bool all_ok = true;
            for (const CheckResult& r : run_fast_checks(cfg)) {
                std::printf("%s: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.c_str());
                all_ok = all_ok && r.pass;
            }
            return all_ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
