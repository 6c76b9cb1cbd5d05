#pragma once

#include <array>
#include <string>
#include <vector>

#include "scmarl/supply_chain.hpp"

namespace scmarl {

// Fixed feature scalings so learners see O(1) inputs.
inline constexpr double kQuantityScale = 1.0 / 100.0;
inline constexpr double kCapacityScale = 1.0 / 450.0;
inline constexpr double kActionScale = 1.0 / 100.0;

struct FeatureSpec {
    std::string name;
    int offset = 0;
    int width = 1;
};

struct ObservationSchema {
    std::vector<FeatureSpec> features;
    int length() const;
    std::string to_csv() const; // header "name,offset,width" plus one row per feature
};

// Layout of one agent's observation:
//   per supplier: per factory backlog + 7-day scheduled-delivery projection,
//                 then supplier capacity and total backlog        (2 x 26)
//   factory:      stock, backorders, parts awaiting assembly, last-step
//                 shipped / on-time / orders, 7-day shippable pipeline  (13)
//   demand:       current demand + forecast horizon                (1 + 24)
//   timestep:     t / t_max                                         (1)
ObservationSchema agent_observation_schema(const EnvParams& params);
int agent_observation_length(const EnvParams& params);
// 3 agent observations + previous joint action (6 values, scaled by 1/100).
int manager_observation_length(const EnvParams& params);

// Pure observation builders; `factory` in {0,1,2}.
std::vector<double> build_agent_observation(const SupplyChainState& state, int factory);
std::vector<double> build_manager_observation(const SupplyChainState& state,
                                              const JointAction& last_action);

struct JointStepResult {
    std::array<std::vector<double>, kNumFactories> observations; // next, per agent
    std::vector<double> manager_observation;                     // next, action block = this action
    std::array<double, kNumFactories> rewards{};                 // Eq. 6/7 combination
    StepOutcome outcome;
    bool terminal = false;
};

// Advances the environment one step and rebuilds every observation.
JointStepResult joint_step(SupplyChainState& state, const JointAction& action);

}  // namespace scmarl
