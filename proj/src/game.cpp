#include "scmarl/game.hpp"

#include <sstream>

#include "scmarl/errors.hpp"

namespace scmarl {

namespace {

// The supplier and factory blocks share the delivery projection; shippable[k]
// counts items that finish assembly on upcoming day k+1: the two in-flight
// assembly slots, then projected deliveries shifted by the 2-day assembly lag.
struct BlockSizes {
    static constexpr int per_supplier = kNumFactories * (1 + kDaysPerStep) + 2;
    static constexpr int factory = 6 + kDaysPerStep;
    int demand;
    explicit BlockSizes(const EnvParams& p) : demand(1 + p.forecast_horizon) {}
    int total() const { return kNumSuppliers * per_supplier + factory + demand + 1; }
};

}  // namespace

int ObservationSchema::length() const {
    int n = 0;
    for (const auto& f : features) n += f.width;
    return n;
}

std::string ObservationSchema::to_csv() const {
    std::ostringstream out;
    out << "name,offset,width\n";
    for (const auto& f : features) out << f.name << "," << f.offset << "," << f.width << "\n";
    return out.str();
}

ObservationSchema agent_observation_schema(const EnvParams& params) {
    ObservationSchema schema;
    int offset = 0;
    auto add = [&](const std::string& name, int width) {
        schema.features.push_back({name, offset, width});
        offset += width;
    };
    for (int s = 0; s < kNumSuppliers; ++s) {
        const std::string sup = "supplier" + std::to_string(s);
        for (int f = 0; f < kNumFactories; ++f) {
            const std::string fac = ".factory" + std::to_string(f);
            add(sup + fac + ".backlog", 1);
            add(sup + fac + ".scheduled_delivery", kDaysPerStep);
        }
        add(sup + ".capacity", 1);
        add(sup + ".backlog_total", 1);
    }
    add("factory.stock", 1);
    add("factory.back_orders", 1);
    add("factory.parts_awaiting", 1);
    add("factory.last_shipped", 1);
    add("factory.last_on_time", 1);
    add("factory.last_orders", 1);
    add("factory.shippable", kDaysPerStep);
    add("demand.current", 1);
    add("demand.forecast", params.forecast_horizon);
    add("timestep", 1);
    return schema;
}

int agent_observation_length(const EnvParams& params) { return BlockSizes(params).total(); }

int manager_observation_length(const EnvParams& params) {
    return kNumFactories * agent_observation_length(params) + kNumFactories * kNumSuppliers;
}

std::vector<double> build_agent_observation(const SupplyChainState& state, int factory) {
    if (factory < 0 || factory >= kNumFactories)
        throw ContractViolation("build_agent_observation: factory index out of range");
    const EnvParams& p = state.params;
    std::vector<double> obs;
    obs.reserve(static_cast<std::size_t>(BlockSizes(p).total()));

    std::array<std::array<std::array<int, kNumFactories>, kDaysPerStep>, kNumSuppliers> proj{};
    for (int s = 0; s < kNumSuppliers; ++s) proj[s] = project_deliveries(state.suppliers[s]);

    for (int s = 0; s < kNumSuppliers; ++s) {
        const SupplierState& sup = state.suppliers[s];
        long total_backlog = 0;
        for (int f = 0; f < kNumFactories; ++f) {
            obs.push_back(sup.backlog[f] * kQuantityScale);
            for (int day = 0; day < kDaysPerStep; ++day)
                obs.push_back(proj[s][day][f] * kQuantityScale);
            total_backlog += sup.backlog[f];
        }
        obs.push_back(sup.capacity * kCapacityScale);
        obs.push_back(static_cast<double>(total_backlog) * kQuantityScale);
    }

    const FactoryState& fac = state.factories[factory];
    obs.push_back(fac.stock * kQuantityScale);
    obs.push_back(fac.back_orders * kQuantityScale);
    obs.push_back(fac.parts_awaiting() * kQuantityScale);
    obs.push_back(fac.last_shipped * kQuantityScale);
    obs.push_back(fac.last_on_time * kQuantityScale);
    obs.push_back(fac.last_orders * kQuantityScale);
    for (int day = 0; day < kDaysPerStep; ++day) {
        int amount = 0;
        if (day < 2) {
            amount = fac.assembly[day];
        } else {
            for (int s = 0; s < kNumSuppliers; ++s) amount += proj[s][day - 2][factory];
        }
        obs.push_back(amount * kQuantityScale);
    }

    const DemandStream& dem = state.demand[factory];
    obs.push_back(dem.sequence[static_cast<std::size_t>(state.t)] * kQuantityScale);
    for (double f : dem.forecasts) obs.push_back(f * kQuantityScale);

    obs.push_back(static_cast<double>(state.t) / static_cast<double>(p.t_max));
    return obs;
}

std::vector<double> build_manager_observation(const SupplyChainState& state,
                                              const JointAction& last_action) {
    std::vector<double> obs;
    obs.reserve(static_cast<std::size_t>(manager_observation_length(state.params)));
    for (int f = 0; f < kNumFactories; ++f) {
        const std::vector<double> agent = build_agent_observation(state, f);
        obs.insert(obs.end(), agent.begin(), agent.end());
    }
    for (int f = 0; f < kNumFactories; ++f)
        for (int s = 0; s < kNumSuppliers; ++s)
            obs.push_back(last_action[f][s] * kActionScale);
    return obs;
}

JointStepResult joint_step(SupplyChainState& state, const JointAction& action) {
    JointStepResult result;
    result.outcome = step(state, action);
    result.rewards = result.outcome.total_reward;
    result.terminal = result.outcome.terminal;
    for (int f = 0; f < kNumFactories; ++f)
        result.observations[f] = build_agent_observation(state, f);
    result.manager_observation = build_manager_observation(state, action);
    return result;
}

}  // namespace scmarl
