#include <doctest.h>

#include "scmarl/config.hpp"
#include "scmarl/errors.hpp"

using scmarl::ConfigError;
using scmarl::ExperimentConfig;
using scmarl::parse_seed_list;

TEST_CASE("defaults carry the published environment constants") {
    const ExperimentConfig cfg;
    CHECK(cfg.env.supplier_capacity[0] == 100);
    CHECK(cfg.env.supplier_capacity[1] == 450);
    CHECK(cfg.env.parts_price[0] == 2.0);
    CHECK(cfg.env.parts_price[1] == 5.0);
    CHECK(cfg.env.item_price == 10.0);
    CHECK(cfg.env.inventory_price == 1.0);
    CHECK(cfg.env.t_max == 52);
    CHECK(cfg.env.demand_min == 50);
    CHECK(cfg.env.demand_max == 150);
    CHECK(cfg.env.forecast_sigma == 30.0);
    CHECK(cfg.env.profit_norm == 300.0);
    CHECK(cfg.env.profit_offset == 400.0);
    CHECK(cfg.env.ofr_target == 0.8);
    CHECK(cfg.env.weight_profit == 0.5);
    CHECK(cfg.env.weight_ofr == 0.5);
    CHECK(cfg.env.forecast_horizon == 24);
    CHECK(cfg.incentive_scale == 1.0 / 300.0);
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("default learner hyperparameters") {
    const ExperimentConfig cfg;
    CHECK(cfg.ddpg.gamma == 0.99);
    CHECK(cfg.ddpg.actor_lr == 1e-4);
    CHECK(cfg.ddpg.critic_lr == 1e-3);
    CHECK(cfg.ddpg.tau == 0.005);
    CHECK(cfg.ddpg.batch_size == 64);
    CHECK(cfg.ddpg.replay_capacity == 100000);
    CHECK(cfg.ddpg.warmup == 1000);
    CHECK(cfg.ddpg.hidden_units == 128);
    CHECK(cfg.ddpg.hidden_layers == 2);
    CHECK(cfg.ddpg.actor_head_bias == -2.0);
    CHECK(cfg.ddpg.manager_head_bias == 1.5);
    CHECK(cfg.ddpg.manager_warmup == 10000);
}

TEST_CASE("round trip through key=value text preserves every field") {
    ExperimentConfig cfg;
    cfg.env.t_max = 13;
    cfg.env.demand_min = 1;
    cfg.env.demand_max = 9;
    cfg.ddpg.gamma = 0.5;
    cfg.ddpg.actor_head_bias = -0.75;
    cfg.ddpg.manager_head_bias = 0.25;
    cfg.ddpg.manager_warmup = 123;
    cfg.episodes = 7;
    cfg.eval_window = 3;
    cfg.seeds = {4, 8, 15};
    cfg.incentive_scale = 0.25;
    const ExperimentConfig back = ExperimentConfig::from_string(cfg.to_key_values());
    CHECK(back.env.t_max == 13);
    CHECK(back.env.demand_min == 1);
    CHECK(back.env.demand_max == 9);
    CHECK(back.ddpg.gamma == 0.5);
    CHECK(back.ddpg.actor_head_bias == -0.75);
    CHECK(back.ddpg.manager_head_bias == 0.25);
    CHECK(back.ddpg.manager_warmup == 123);
    CHECK(back.episodes == 7);
    CHECK(back.eval_window == 3);
    CHECK(back.seeds == std::vector<std::uint64_t>{4, 8, 15});
    CHECK(back.incentive_scale == 0.25);
    CHECK(back.to_key_values() == cfg.to_key_values());
}

TEST_CASE("comments and blank lines are ignored") {
    const auto cfg = ExperimentConfig::from_string("# header\n\nt_max = 10  # trailing\n");
    CHECK(cfg.env.t_max == 10);
}

TEST_CASE("unknown keys are rejected with the offending name") {
    CHECK_THROWS_WITH_AS(ExperimentConfig::from_string("tmax=10\n"),
                         doctest::Contains("tmax"), ConfigError);
}

TEST_CASE("malformed numbers name the key") {
    CHECK_THROWS_WITH_AS(ExperimentConfig::from_string("gamma=fast\n"),
                         doctest::Contains("gamma"), ConfigError);
}

TEST_CASE("validation names the offending field") {
    ExperimentConfig cfg;
    cfg.env.t_max = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("t_max"), ConfigError);

    cfg = ExperimentConfig{};
    cfg.env.demand_max = cfg.env.demand_min - 1;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("demand_max"), ConfigError);

    cfg = ExperimentConfig{};
    cfg.ddpg.gamma = 1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("gamma"), ConfigError);

    cfg = ExperimentConfig{};
    cfg.eval_window = cfg.episodes + 1;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("eval_window"), ConfigError);
}

TEST_CASE("seed lists accept ranges and comma lists") {
    CHECK(parse_seed_list("0..9").size() == 10);
    CHECK(parse_seed_list("0..9").front() == 0);
    CHECK(parse_seed_list("0..9").back() == 9);
    CHECK(parse_seed_list("3") == std::vector<std::uint64_t>{3});
    CHECK(parse_seed_list("4, 8, 15") == std::vector<std::uint64_t>{4, 8, 15});
    CHECK_THROWS_AS(parse_seed_list("9..0"), ConfigError);
    CHECK_THROWS_AS(parse_seed_list("abc"), ConfigError);
}

TEST_CASE("noise decay horizon defaults to the whole training run") {
    ExperimentConfig cfg;
    cfg.episodes = 500;
    cfg.env.t_max = 52;
    CHECK(cfg.noise_decay_steps_effective() == 500L * 52L);
    cfg.ddpg.noise_decay_steps = 123;
    CHECK(cfg.noise_decay_steps_effective() == 123);
}
