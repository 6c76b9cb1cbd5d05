#pragma once

#include <array>
#include <string>
#include <vector>

#include "scmarl/game.hpp"
#include "scmarl/supply_chain.hpp"

namespace scmarl {

// Manager action: one auxiliary state per factory, components in [0,1]
// (an incentive intensity per supplier).
using AuxState = std::array<double, kNumSuppliers>;
using ManagerAction = std::array<AuxState, kNumFactories>;

// Returns obs with the two auxiliary components appended.
// Throws ContractViolation when aux leaves [0,1].
std::vector<double> augment_observation(const std::vector<double>& obs, const AuxState& aux);

// scale * (aux_prev . action_prev): the incentive paid one step after the
// action it rewards.
double auxiliary_reward(const AuxState& aux_prev, const std::array<int, kNumSuppliers>& action_prev,
                        double scale);

// sum_i (raw_i - incentive_i)
double manager_reward(const std::array<double, kNumFactories>& raw_rewards,
                      const std::array<double, kNumFactories>& incentives);

struct IncentiveRecord {
    int t = 0;      // step at which the incentive was paid
    int factory = 0;
    AuxState aux{};  // auxiliary state chosen at this step
    double incentive = 0.0; // payment received this step (earned by the previous action)
};

struct MediatedStepResult {
    std::array<std::vector<double>, kNumFactories> observations; // next raw agent observations
    std::vector<double> manager_observation;                     // next manager observation
    std::array<double, kNumFactories> raw_rewards{};
    std::array<double, kNumFactories> incentives{};
    std::array<double, kNumFactories> shaped_rewards{}; // raw + incentive
    double manager_reward = 0.0;                        // sum_i (raw_i - incentive_i)
    StepOutcome outcome;
    bool terminal = false;
};

// Stateful wrapper implementing the incentive timing contract: the auxiliary
// state chosen at step t pays out at step t+1 against the actions taken at
// step t; the payment at t=0 is zero. Callers augment the returned raw
// observations once the manager has chosen the next auxiliary states.
class MediatedGame {
public:
    MediatedGame(const EnvParams& params, std::uint64_t seed, double incentive_scale);

    MediatedStepResult step(const ManagerAction& aux, const JointAction& action);

    const SupplyChainState& state() const { return state_; }
    SupplyChainState& state() { return state_; }
    double incentive_scale() const { return scale_; }
    const std::vector<IncentiveRecord>& ledger() const { return ledger_; }
    static std::string ledger_csv(const std::vector<IncentiveRecord>& ledger);

private:
    SupplyChainState state_;
    double scale_;
    ManagerAction prev_aux_{};
    JointAction prev_action_{};
    bool has_prev_ = false;
    std::vector<IncentiveRecord> ledger_;
};

}  // namespace scmarl
