#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "scmarl/config.hpp"
#include "scmarl/rng.hpp"

namespace scmarl {

inline constexpr int kNumSuppliers = 2;
inline constexpr int kNumFactories = 3;
inline constexpr int kDaysPerStep = 7;
inline constexpr int kMaxOrder = 99;

// Joint action: per factory, integer order quantities to each supplier.
using JointAction = std::array<std::array<int, kNumSuppliers>, kNumFactories>;

struct SupplierState {
    int capacity = 0;   // parts producible per day
    double price = 0.0; // currency per part
    std::array<int, kNumFactories> backlog{}; // parts owed, per ordering factory

    bool operator==(const SupplierState&) const = default;
};

struct FactoryState {
    int stock = 0;       // finished items on hand
    int back_orders = 0; // unfulfilled retailer orders carried over
    // Parts in assembly: assembly[0] becomes stock tomorrow morning, assembly[1]
    // the morning after. Parts delivered on day d enter assembly[1] that evening
    // and reach stock on the morning of day d+2.
    std::array<int, 2> assembly{};
    int last_shipped = 0;
    int last_on_time = 0;
    int last_orders = 0; // retailer demand received in the previous step

    int parts_awaiting() const { return assembly[0] + assembly[1]; }

    bool operator==(const FactoryState&) const = default;
};

struct DemandStream {
    // Demand per step, pre-drawn for the whole episode plus the forecast horizon
    // so forecasts near the end of the episode stay well-defined.
    std::vector<int> sequence;
    // Noisy estimates of sequence[t+1 .. t+horizon], regenerated every step.
    std::vector<double> forecasts;
    RngStream noise; // forecast-noise substream, advanced once per step

    bool operator==(const DemandStream&) const = default;
};

struct SupplyChainState {
    EnvParams params;
    std::array<SupplierState, kNumSuppliers> suppliers;
    std::array<FactoryState, kNumFactories> factories;
    std::array<DemandStream, kNumFactories> demand; // one retailer per factory
    int t = 0;

    bool terminal() const { return t >= params.t_max; }

    bool operator==(const SupplyChainState&) const = default;
};

struct StepOutcome {
    std::array<std::array<int, kNumSuppliers>, kNumFactories> orders{}; // action echo
    std::array<std::array<int, kNumFactories>, kNumSuppliers> delivered{};      // step totals
    std::array<std::array<int, kDaysPerStep>, kNumSuppliers> delivered_per_day{};
    std::array<int, kNumFactories> assembled{}; // items that entered stock this step
    std::array<int, kNumFactories> shipped{};
    std::array<int, kNumFactories> shipped_on_time{};
    std::array<int, kNumFactories> new_orders{}; // retailer demand that arrived (DAY2)
    std::array<int, kNumFactories> inventory_end{};
    std::array<int, kNumFactories> backorders_end{};
    double ofr = 0.0;
    int ofr_reward = 0;
    std::array<double, kNumFactories> profit_reward{};
    std::array<double, kNumFactories> total_reward{};
    bool terminal = false;
    bool operator==(const StepOutcome&) const = default;
};

// Builds the t=0 state: empty backlogs/stock/backorders, demand streams seeded
// from named substreams of `seed`. Throws ConfigError on invalid params.
SupplyChainState reset(const EnvParams& params, std::uint64_t seed);

// Simulates seven days (orders, production, demand arrival, shipping) and
// advances t. Throws ContractViolation on out-of-range orders or a finished
// episode.
StepOutcome step(SupplyChainState& state, const JointAction& orders);

// Splits `produce` parts across factories proportionally to their backlog using
// largest-remainder rounding, ties broken by the lowest factory index. `produce`
// must not exceed the total backlog.
std::array<int, kNumFactories> allocate_capacity(int produce,
                                                 const std::array<int, kNumFactories>& backlog);

// One day of production: delivers min(capacity, total backlog) parts split by
// allocate_capacity and reduces the backlog accordingly.
std::array<int, kNumFactories> supplier_produce_day(SupplierState& supplier);

// Deliveries each factory would receive over the next `kDaysPerStep` days if no
// further orders arrived: [day][factory]. Pure.
std::array<std::array<int, kNumFactories>, kDaysPerStep> project_deliveries(
    const SupplierState& supplier);

// on_time/total_orders; 1.0 when there were no orders at all.
double compute_ofr(long on_time, long total_orders);

// (shipped*p_item - sum_s orders_s*p_parts_s - inventory*p_inv - offset)/norm
double profit_reward(int shipped, const std::array<int, kNumSuppliers>& orders, int inventory,
                     const EnvParams& params);

// 1 if ofr >= target else 0.
int ofr_reward(double ofr, double target);

// weight_profit*profit + weight_ofr*ofr_r
double agent_reward(double profit, int ofr_r, const EnvParams& params);

}  // namespace scmarl
