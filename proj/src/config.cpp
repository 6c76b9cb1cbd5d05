#include "scmarl/config.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "scmarl/errors.hpp"

namespace scmarl {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

}  // namespace

void EnvParams::validate() const {
    require(supplier_capacity[0] >= 0, "supplier_capacity_0 must be non-negative");
    require(supplier_capacity[1] >= 0, "supplier_capacity_1 must be non-negative");
    require(parts_price[0] >= 0.0, "price_parts_0 must be non-negative");
    require(parts_price[1] >= 0.0, "price_parts_1 must be non-negative");
    require(item_price >= 0.0, "price_item must be non-negative");
    require(inventory_price >= 0.0, "price_inventory must be non-negative");
    require(t_max >= 1, "t_max must be at least 1");
    require(demand_min >= 0, "demand_min must be non-negative");
    require(demand_max >= demand_min, "demand_max must be >= demand_min");
    require(forecast_sigma >= 0.0, "forecast_sigma must be non-negative");
    require(profit_norm > 0.0, "profit_norm must be positive");
    require(ofr_target >= 0.0 && ofr_target <= 1.0, "ofr_target must lie in [0,1]");
    require(weight_profit >= 0.0, "weight_profit must be non-negative");
    require(weight_ofr >= 0.0, "weight_ofr must be non-negative");
    require(forecast_horizon >= 0, "forecast_horizon must be non-negative");
}

void DdpgParams::validate() const {
    require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0,1)");
    require(actor_lr > 0.0, "actor_lr must be positive");
    require(critic_lr > 0.0, "critic_lr must be positive");
    require(tau > 0.0 && tau <= 1.0, "tau must lie in (0,1]");
    require(batch_size >= 1, "batch_size must be at least 1");
    require(replay_capacity >= 1, "replay_capacity must be at least 1");
    require(noise_sigma_start >= 0.0, "noise_sigma_start must be non-negative");
    require(noise_sigma_end >= 0.0, "noise_sigma_end must be non-negative");
    require(noise_decay_steps >= 0, "noise_decay_steps must be non-negative");
    require(hidden_units >= 1, "hidden_units must be at least 1");
    require(hidden_layers >= 1, "hidden_layers must be at least 1");
}

void ExperimentConfig::validate() const {
    env.validate();
    ddpg.validate();
    require(incentive_scale >= 0.0, "incentive_scale must be non-negative");
    require(episodes >= 1, "episodes must be at least 1");
    require(!seeds.empty(), "seeds must be non-empty");
    require(eval_window >= 1, "eval_window must be at least 1");
    require(eval_window <= episodes, "eval_window must not exceed episodes");
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    const std::string t = trim(text);
    require(!t.empty(), "seeds must be non-empty");
    std::vector<std::uint64_t> out;
    const std::size_t dots = t.find("..");
    if (dots != std::string::npos) {
        const long a = parse_long("seeds", trim(t.substr(0, dots)));
        const long b = parse_long("seeds", trim(t.substr(dots + 2)));
        require(a >= 0 && b >= a, "seeds range must satisfy 0 <= a <= b");
        for (long s = a; s <= b; ++s) out.push_back(static_cast<std::uint64_t>(s));
        return out;
    }
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long s = parse_long("seeds", trim(item));
        require(s >= 0, "seeds must be non-negative");
        out.push_back(static_cast<std::uint64_t>(s));
    }
    require(!out.empty(), "seeds must be non-empty");
    return out;
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
    ExperimentConfig cfg;
    using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"supplier_capacity_0", [](auto& c, auto& k, auto& v) { c.env.supplier_capacity[0] = static_cast<int>(parse_long(k, v)); }},
        {"supplier_capacity_1", [](auto& c, auto& k, auto& v) { c.env.supplier_capacity[1] = static_cast<int>(parse_long(k, v)); }},
        {"price_item", [](auto& c, auto& k, auto& v) { c.env.item_price = parse_double(k, v); }},
        {"price_parts_0", [](auto& c, auto& k, auto& v) { c.env.parts_price[0] = parse_double(k, v); }},
        {"price_parts_1", [](auto& c, auto& k, auto& v) { c.env.parts_price[1] = parse_double(k, v); }},
        {"price_inventory", [](auto& c, auto& k, auto& v) { c.env.inventory_price = parse_double(k, v); }},
        {"t_max", [](auto& c, auto& k, auto& v) { c.env.t_max = static_cast<int>(parse_long(k, v)); }},
        {"demand_min", [](auto& c, auto& k, auto& v) { c.env.demand_min = static_cast<int>(parse_long(k, v)); }},
        {"demand_max", [](auto& c, auto& k, auto& v) { c.env.demand_max = static_cast<int>(parse_long(k, v)); }},
        {"forecast_sigma", [](auto& c, auto& k, auto& v) { c.env.forecast_sigma = parse_double(k, v); }},
        {"profit_norm", [](auto& c, auto& k, auto& v) { c.env.profit_norm = parse_double(k, v); }},
        {"profit_offset", [](auto& c, auto& k, auto& v) { c.env.profit_offset = parse_double(k, v); }},
        {"ofr_target", [](auto& c, auto& k, auto& v) { c.env.ofr_target = parse_double(k, v); }},
        {"weight_profit", [](auto& c, auto& k, auto& v) { c.env.weight_profit = parse_double(k, v); }},
        {"weight_ofr", [](auto& c, auto& k, auto& v) { c.env.weight_ofr = parse_double(k, v); }},
        {"forecast_horizon", [](auto& c, auto& k, auto& v) { c.env.forecast_horizon = static_cast<int>(parse_long(k, v)); }},
        {"incentive_scale", [](auto& c, auto& k, auto& v) { c.incentive_scale = parse_double(k, v); }},
        {"gamma", [](auto& c, auto& k, auto& v) { c.ddpg.gamma = parse_double(k, v); }},
        {"actor_lr", [](auto& c, auto& k, auto& v) { c.ddpg.actor_lr = parse_double(k, v); }},
        {"critic_lr", [](auto& c, auto& k, auto& v) { c.ddpg.critic_lr = parse_double(k, v); }},
        {"tau", [](auto& c, auto& k, auto& v) { c.ddpg.tau = parse_double(k, v); }},
        {"batch_size", [](auto& c, auto& k, auto& v) { c.ddpg.batch_size = static_cast<int>(parse_long(k, v)); }},
        {"replay_capacity", [](auto& c, auto& k, auto& v) { c.ddpg.replay_capacity = static_cast<std::size_t>(parse_long(k, v)); }},
        {"warmup_transitions", [](auto& c, auto& k, auto& v) { c.ddpg.warmup = static_cast<std::size_t>(parse_long(k, v)); }},
        {"noise_sigma_start", [](auto& c, auto& k, auto& v) { c.ddpg.noise_sigma_start = parse_double(k, v); }},
        {"noise_sigma_end", [](auto& c, auto& k, auto& v) { c.ddpg.noise_sigma_end = parse_double(k, v); }},
        {"noise_decay_steps", [](auto& c, auto& k, auto& v) { c.ddpg.noise_decay_steps = parse_long(k, v); }},
        {"hidden_units", [](auto& c, auto& k, auto& v) { c.ddpg.hidden_units = static_cast<int>(parse_long(k, v)); }},
        {"hidden_layers", [](auto& c, auto& k, auto& v) { c.ddpg.hidden_layers = static_cast<int>(parse_long(k, v)); }},
        {"actor_head_bias", [](auto& c, auto& k, auto& v) { c.ddpg.actor_head_bias = parse_double(k, v); }},
        {"manager_head_bias", [](auto& c, auto& k, auto& v) { c.ddpg.manager_head_bias = parse_double(k, v); }},
        {"manager_warmup", [](auto& c, auto& k, auto& v) { c.ddpg.manager_warmup = static_cast<std::size_t>(parse_long(k, v)); }},
        {"episodes", [](auto& c, auto& k, auto& v) { c.episodes = static_cast<int>(parse_long(k, v)); }},
        {"eval_window", [](auto& c, auto& k, auto& v) { c.eval_window = static_cast<int>(parse_long(k, v)); }},
        {"seeds", [](auto& c, auto&, auto& v) { c.seeds = parse_seed_list(v); }},
        {"frozen_zero_manager", [](auto& c, auto& k, auto& v) { c.frozen_zero_manager = parse_bool(k, v); }},
    };

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

std::string ExperimentConfig::to_key_values() const {
    std::ostringstream out;
    out.precision(17);
    out << "supplier_capacity_0=" << env.supplier_capacity[0] << "\n"
        << "supplier_capacity_1=" << env.supplier_capacity[1] << "\n"
        << "price_item=" << env.item_price << "\n"
        << "price_parts_0=" << env.parts_price[0] << "\n"
        << "price_parts_1=" << env.parts_price[1] << "\n"
        << "price_inventory=" << env.inventory_price << "\n"
        << "t_max=" << env.t_max << "\n"
        << "demand_min=" << env.demand_min << "\n"
        << "demand_max=" << env.demand_max << "\n"
        << "forecast_sigma=" << env.forecast_sigma << "\n"
        << "profit_norm=" << env.profit_norm << "\n"
        << "profit_offset=" << env.profit_offset << "\n"
        << "ofr_target=" << env.ofr_target << "\n"
        << "weight_profit=" << env.weight_profit << "\n"
        << "weight_ofr=" << env.weight_ofr << "\n"
        << "forecast_horizon=" << env.forecast_horizon << "\n"
        << "incentive_scale=" << incentive_scale << "\n"
        << "gamma=" << ddpg.gamma << "\n"
        << "actor_lr=" << ddpg.actor_lr << "\n"
        << "critic_lr=" << ddpg.critic_lr << "\n"
        << "tau=" << ddpg.tau << "\n"
        << "batch_size=" << ddpg.batch_size << "\n"
        << "replay_capacity=" << ddpg.replay_capacity << "\n"
        << "warmup_transitions=" << ddpg.warmup << "\n"
        << "noise_sigma_start=" << ddpg.noise_sigma_start << "\n"
        << "noise_sigma_end=" << ddpg.noise_sigma_end << "\n"
        << "noise_decay_steps=" << ddpg.noise_decay_steps << "\n"
        << "hidden_units=" << ddpg.hidden_units << "\n"
        << "hidden_layers=" << ddpg.hidden_layers << "\n"
        << "actor_head_bias=" << ddpg.actor_head_bias << "\n"
        << "manager_head_bias=" << ddpg.manager_head_bias << "\n"
        << "manager_warmup=" << ddpg.manager_warmup << "\n"
        << "episodes=" << episodes << "\n"
        << "eval_window=" << eval_window << "\n";
    out << "seeds=";
    for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? "," : "") << seeds[i];
    out << "\n";
    if (frozen_zero_manager) out << "frozen_zero_manager=true\n";
    return out.str();
}

}  // namespace scmarl
