#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace scmarl {

// Environment constants. Defaults reproduce the reference scenario: a cheap
// capacity-limited supplier 0 and an expensive high-capacity supplier 1.
struct EnvParams {
    std::array<int, 2> supplier_capacity{100, 450};  // parts per day
    std::array<double, 2> parts_price{2.0, 5.0};     // currency per part
    double item_price = 10.0;                        // selling price per item
    double inventory_price = 1.0;                    // holding fee per item per step
    int t_max = 52;                                  // steps per episode (~1 year of weeks)
    int demand_min = 50;                             // retailer demand, flat distribution
    int demand_max = 150;
    double forecast_sigma = 30.0;                    // forecast = demand + N(0, sigma)
    double profit_norm = 300.0;                      // C_norm
    double profit_offset = 400.0;                    // C_offset
    double ofr_target = 0.8;                         // order-fulfillment-ratio target
    double weight_profit = 0.5;
    double weight_ofr = 0.5;
    int forecast_horizon = 24;  // forecast steps beyond the current demand

    // Throws ConfigError naming the offending field.
    void validate() const;

    bool operator==(const EnvParams&) const = default;
};

// Learner hyperparameters shared by the factory agents and the manager.
struct DdpgParams {
    double gamma = 0.99;
    double actor_lr = 1e-4;
    double critic_lr = 1e-3;
    double tau = 0.005;  // target soft-update rate
    int batch_size = 64;
    std::size_t replay_capacity = 100000;
    std::size_t warmup = 1000;        // transitions before updates begin
    double noise_sigma_start = 0.1;   // exploration noise, fraction of [0,1] range
    double noise_sigma_end = 0.02;
    long noise_decay_steps = 0;  // 0 = derive from episodes * t_max
    int hidden_units = 128;
    int hidden_layers = 2;
    // Initial bias of the actor's output layer. The (tanh(x)+1)/2 head maps a
    // zero-centered init to mid-range actions (orders ~50), which floods the
    // chain with parts before learning starts; a negative bias reproduces the
    // usual DDPG convention of starting near the zero action instead.
    double actor_head_bias = -2.0;
    // Same knob for the manager's actor. The manager starts paying near its
    // ceiling so subsidised volume is worthwhile from the first episodes; the
    // manager reward's -incentive term then drives payments back down once
    // the factories' new policy carries itself.
    double manager_head_bias = 1.5;
    // Transitions before the manager's own updates begin. The -incentive term
    // gives the manager a dense urge to cut payments from its first update;
    // holding its opening schedule fixed for longer than the factories'
    // warmup lets their response show up in its replay before it optimizes.
    std::size_t manager_warmup = 10000;

    void validate() const;
};

struct ExperimentConfig {
    EnvParams env;
    DdpgParams ddpg;

    double incentive_scale = 1.0 / 300.0;  // auxiliary reward units per ordered part
    int episodes = 500;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    int eval_window = 25;  // final episodes used for scoring

    // Diagnostic: run managed mode with a manager pinned to the zero action
    // (no augment signal, no incentives, no manager learning).
    bool frozen_zero_manager = false;

    void validate() const;

    // Flat key=value file, '#' comments. Unknown keys are an error.
    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_string(const std::string& text);
    std::string to_key_values() const;

    long noise_decay_steps_effective() const {
        return ddpg.noise_decay_steps > 0
                   ? ddpg.noise_decay_steps
                   : static_cast<long>(episodes) * env.t_max;
    }
};

// "3", "0,4,7" or "0..9" (inclusive range).
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace scmarl
