#include "scmarl/manager.hpp"

#include <cstdio>
#include <sstream>

#include "scmarl/errors.hpp"

namespace scmarl {

namespace {

void check_aux(const AuxState& aux) {
    for (double v : aux)
        if (!(v >= 0.0 && v <= 1.0))
            throw ContractViolation("auxiliary state component outside [0,1]: " +
                                    std::to_string(v));
}

}  // namespace

std::vector<double> augment_observation(const std::vector<double>& obs, const AuxState& aux) {
    check_aux(aux);
    std::vector<double> out;
    out.reserve(obs.size() + aux.size());
    out.insert(out.end(), obs.begin(), obs.end());
    out.insert(out.end(), aux.begin(), aux.end());
    return out;
}

double auxiliary_reward(const AuxState& aux_prev, const std::array<int, kNumSuppliers>& action_prev,
                        double scale) {
    check_aux(aux_prev);
    double dot = 0.0;
    for (int s = 0; s < kNumSuppliers; ++s) {
        if (action_prev[s] < 0 || action_prev[s] > kMaxOrder)
            throw ContractViolation("auxiliary_reward: action component out of range");
        dot += aux_prev[s] * action_prev[s];
    }
    return scale * dot;
}

double manager_reward(const std::array<double, kNumFactories>& raw_rewards,
                      const std::array<double, kNumFactories>& incentives) {
    double total = 0.0;
    for (int f = 0; f < kNumFactories; ++f) total += raw_rewards[f] - incentives[f];
    return total;
}

MediatedGame::MediatedGame(const EnvParams& params, std::uint64_t seed, double incentive_scale)
    : state_(reset(params, seed)), scale_(incentive_scale) {}

MediatedStepResult MediatedGame::step(const ManagerAction& aux, const JointAction& action) {
    for (const AuxState& a : aux) check_aux(a);

    MediatedStepResult result;
    for (int f = 0; f < kNumFactories; ++f)
        result.incentives[f] =
            has_prev_ ? auxiliary_reward(prev_aux_[f], prev_action_[f], scale_) : 0.0;

    JointStepResult inner = joint_step(state_, action);
    result.observations = std::move(inner.observations);
    result.manager_observation = std::move(inner.manager_observation);
    result.outcome = std::move(inner.outcome);
    result.terminal = inner.terminal;
    result.raw_rewards = inner.rewards;
    for (int f = 0; f < kNumFactories; ++f)
        result.shaped_rewards[f] = result.raw_rewards[f] + result.incentives[f];
    result.manager_reward = manager_reward(result.raw_rewards, result.incentives);

    const int paid_at = state_.t - 1;
    for (int f = 0; f < kNumFactories; ++f)
        ledger_.push_back({paid_at, f, aux[f], result.incentives[f]});

    prev_aux_ = aux;
    prev_action_ = action;
    has_prev_ = true;
    return result;
}

std::string MediatedGame::ledger_csv(const std::vector<IncentiveRecord>& ledger) {
    std::ostringstream out;
    out << "step,factory,aux_supplier0,aux_supplier1,incentive\n";
    char buf[96];
    for (const IncentiveRecord& rec : ledger) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g\n", rec.t, rec.factory,
                      rec.aux[0], rec.aux[1], rec.incentive);
        out << buf;
    }
    return out.str();
}

}  // namespace scmarl
