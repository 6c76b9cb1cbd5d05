#include "scmarl/supply_chain.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "scmarl/errors.hpp"

namespace scmarl {

namespace {

void regenerate_forecasts(DemandStream& stream, int t, const EnvParams& params) {
    stream.forecasts.resize(static_cast<std::size_t>(params.forecast_horizon));
    for (int k = 0; k < params.forecast_horizon; ++k) {
        const double noise = stream.noise.normal(0.0, params.forecast_sigma);
        const double estimate = stream.sequence[static_cast<std::size_t>(t + 1 + k)] + noise;
        stream.forecasts[static_cast<std::size_t>(k)] = std::max(0.0, estimate);
    }
}

}  // namespace

SupplyChainState reset(const EnvParams& params, std::uint64_t seed) {
    params.validate();
    SupplyChainState state;
    state.params = params;
    for (int s = 0; s < kNumSuppliers; ++s) {
        state.suppliers[s].capacity = params.supplier_capacity[s];
        state.suppliers[s].price = params.parts_price[s];
    }
    // Demand is pre-drawn for the episode plus the forecast horizon so the
    // forecast window never runs off the end of the sequence.
    const int horizon = params.t_max + params.forecast_horizon + 1;
    for (int r = 0; r < kNumFactories; ++r) {
        DemandStream& stream = state.demand[r];
        RngStream demand_rng = RngStream::substream(seed, "demand", static_cast<std::uint64_t>(r));
        stream.sequence.resize(static_cast<std::size_t>(horizon));
        for (int t = 0; t < horizon; ++t)
            stream.sequence[static_cast<std::size_t>(t)] =
                demand_rng.uniform_int(params.demand_min, params.demand_max);
        stream.noise = RngStream::substream(seed, "forecast", static_cast<std::uint64_t>(r));
        regenerate_forecasts(stream, 0, params);
    }
    return state;
}

std::array<int, kNumFactories> allocate_capacity(int produce,
                                                 const std::array<int, kNumFactories>& backlog) {
    std::array<int, kNumFactories> out{};
    for (int f = 0; f < kNumFactories; ++f)
        if (backlog[f] < 0) throw ContractViolation("allocate_capacity: negative backlog");
    const long long total = std::accumulate(backlog.begin(), backlog.end(), 0LL);
    if (produce < 0 || produce > total)
        throw ContractViolation("allocate_capacity: produce must lie in [0, total backlog]");
    if (produce == 0) return out;
    if (produce == total) {
        for (int f = 0; f < kNumFactories; ++f) out[f] = backlog[f];
        return out;
    }
    // Integer-exact largest-remainder apportionment.
    std::array<long long, kNumFactories> remainder{};
    int assigned = 0;
    for (int f = 0; f < kNumFactories; ++f) {
        const long long share = static_cast<long long>(produce) * backlog[f];
        out[f] = static_cast<int>(share / total);
        remainder[f] = share % total;
        assigned += out[f];
    }
    std::array<int, kNumFactories> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (int k = 0; k < produce - assigned; ++k) out[order[static_cast<std::size_t>(k)]] += 1;
    return out;
}

std::array<int, kNumFactories> supplier_produce_day(SupplierState& supplier) {
    const long long total =
        std::accumulate(supplier.backlog.begin(), supplier.backlog.end(), 0LL);
    const int produce = static_cast<int>(std::min<long long>(supplier.capacity, total));
    const auto delivered = allocate_capacity(produce, supplier.backlog);
    for (int f = 0; f < kNumFactories; ++f) supplier.backlog[f] -= delivered[f];
    return delivered;
}

std::array<std::array<int, kNumFactories>, kDaysPerStep> project_deliveries(
    const SupplierState& supplier) {
    SupplierState scratch = supplier;
    std::array<std::array<int, kNumFactories>, kDaysPerStep> out{};
    for (int day = 0; day < kDaysPerStep; ++day) out[static_cast<std::size_t>(day)] =
        supplier_produce_day(scratch);
    return out;
}

double compute_ofr(long on_time, long total_orders) {
    if (on_time < 0 || total_orders < 0)
        throw ContractViolation("compute_ofr: counts must be non-negative");
    if (on_time > total_orders)
        throw ContractViolation("compute_ofr: on_time exceeds total_orders");
    if (total_orders == 0) return 1.0; // vacuous fulfillment
    return static_cast<double>(on_time) / static_cast<double>(total_orders);
}

double profit_reward(int shipped, const std::array<int, kNumSuppliers>& orders, int inventory,
                     const EnvParams& params) {
    if (shipped < 0 || orders[0] < 0 || orders[1] < 0 || inventory < 0)
        throw ContractViolation("profit_reward: counts must be non-negative");
    double parts_cost = 0.0;
    for (int s = 0; s < kNumSuppliers; ++s) parts_cost += orders[s] * params.parts_price[s];
    const double revenue = shipped * params.item_price;
    const double holding = inventory * params.inventory_price;
    return (revenue - parts_cost - holding - params.profit_offset) / params.profit_norm;
}

int ofr_reward(double ofr, double target) {
    if (ofr < 0.0 || ofr > 1.0) throw ContractViolation("ofr_reward: ofr must lie in [0,1]");
    return ofr >= target ? 1 : 0;
}

double agent_reward(double profit, int ofr_r, const EnvParams& params) {
    return params.weight_profit * profit + params.weight_ofr * ofr_r;
}

StepOutcome step(SupplyChainState& state, const JointAction& orders) {
    if (state.terminal())
        throw ContractViolation("step: episode already finished (t = " +
                                std::to_string(state.t) + ")");
    for (int f = 0; f < kNumFactories; ++f)
        for (int s = 0; s < kNumSuppliers; ++s)
            if (orders[f][s] < 0 || orders[f][s] > kMaxOrder)
                throw ContractViolation("step: order component out of [0," +
                                        std::to_string(kMaxOrder) + "]: " +
                                        std::to_string(orders[f][s]));

    const EnvParams& p = state.params;
    StepOutcome out;
    out.orders = orders;
    for (int f = 0; f < kNumFactories; ++f)
        out.new_orders[f] = state.demand[f].sequence[static_cast<std::size_t>(state.t)];

    // Retailer orders not yet served this step; unfulfilled remainder becomes
    // back orders at step end.
    std::array<int, kNumFactories> outstanding_new{};

    for (int day = 1; day <= kDaysPerStep; ++day) {
        // Morning: assembly finishes for parts delivered two days ago.
        for (int f = 0; f < kNumFactories; ++f) {
            FactoryState& fac = state.factories[f];
            const int ready = fac.assembly[0];
            fac.assembly[0] = fac.assembly[1];
            fac.assembly[1] = 0;
            fac.stock += ready;
            out.assembled[f] += ready;
        }

        // DAY1: new supplier orders join the backlog before production starts.
        if (day == 1)
            for (int f = 0; f < kNumFactories; ++f)
                for (int s = 0; s < kNumSuppliers; ++s)
                    state.suppliers[s].backlog[f] += orders[f][s];

        // Production and same-day delivery; delivered parts start assembling.
        for (int s = 0; s < kNumSuppliers; ++s) {
            const auto delivered = supplier_produce_day(state.suppliers[s]);
            for (int f = 0; f < kNumFactories; ++f) {
                out.delivered[s][f] += delivered[f];
                out.delivered_per_day[s][day - 1] += delivered[f];
                state.factories[f].assembly[1] += delivered[f];
            }
        }

        // DAY2: retailer demand arrives.
        if (day == 2)
            for (int f = 0; f < kNumFactories; ++f) outstanding_new[f] += out.new_orders[f];

        // DAY3..DAY7: ship from stock, back orders first; only DAY3 shipments
        // against this step's new orders count as on time.
        if (day >= 3) {
            for (int f = 0; f < kNumFactories; ++f) {
                FactoryState& fac = state.factories[f];
                const int ship_old = std::min(fac.stock, fac.back_orders);
                fac.stock -= ship_old;
                fac.back_orders -= ship_old;
                const int ship_new = std::min(fac.stock, outstanding_new[f]);
                fac.stock -= ship_new;
                outstanding_new[f] -= ship_new;
                out.shipped[f] += ship_old + ship_new;
                if (day == 3) out.shipped_on_time[f] += ship_new;
            }
        }
    }

    long total_on_time = 0;
    long total_new_orders = 0;
    for (int f = 0; f < kNumFactories; ++f) {
        FactoryState& fac = state.factories[f];
        fac.back_orders += outstanding_new[f];
        out.inventory_end[f] = fac.stock;
        out.backorders_end[f] = fac.back_orders;
        fac.last_shipped = out.shipped[f];
        fac.last_on_time = out.shipped_on_time[f];
        fac.last_orders = out.new_orders[f];
        total_on_time += out.shipped_on_time[f];
        total_new_orders += out.new_orders[f];
    }

    out.ofr = compute_ofr(total_on_time, total_new_orders);
    out.ofr_reward = ofr_reward(out.ofr, p.ofr_target);
    for (int f = 0; f < kNumFactories; ++f) {
        out.profit_reward[f] = profit_reward(out.shipped[f], orders[f], out.inventory_end[f], p);
        out.total_reward[f] = agent_reward(out.profit_reward[f], out.ofr_reward, p);
    }

    state.t += 1;
    out.terminal = state.terminal();
    for (int r = 0; r < kNumFactories; ++r) regenerate_forecasts(state.demand[r], state.t, p);
    return out;
}

}  // namespace scmarl
