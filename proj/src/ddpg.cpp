#include "scmarl/ddpg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "scmarl/errors.hpp"
#include "scmarl/game.hpp"

namespace scmarl {

namespace {

std::vector<int> net_dims(int in, int out, const DdpgParams& hp) {
    std::vector<int> dims{in};
    for (int l = 0; l < hp.hidden_layers; ++l) dims.push_back(hp.hidden_units);
    dims.push_back(out);
    return dims;
}

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ContractViolation("ReplayBuffer: capacity must be positive");
    data_.reserve(std::min<std::size_t>(capacity_, 1 << 16));
}

void ReplayBuffer::push(Transition t) {
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[next_] = std::move(t);
        next_ = (next_ + 1) % capacity_;
    }
}

const Transition& ReplayBuffer::sample(RngStream& rng) const {
    if (data_.empty()) throw ContractViolation("ReplayBuffer::sample: buffer is empty");
    return data_[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<int>(data_.size()) - 1))];
}

int quantize_component(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw ContractViolation("quantize_component: input outside [0,1]: " + std::to_string(x));
    const int q = static_cast<int>(std::floor(x * 100.0));
    return std::min(q, kMaxOrder);
}

std::array<int, kNumSuppliers> quantize_orders(const std::array<double, kNumSuppliers>& action01) {
    std::array<int, kNumSuppliers> out{};
    for (int s = 0; s < kNumSuppliers; ++s) out[s] = quantize_component(action01[s]);
    return out;
}

DdpgAgent::DdpgAgent(int obs_dim, int action_dim, const DdpgParams& hp, RngStream init_rng)
    : obs_dim_(obs_dim), action_dim_(action_dim), hp_(hp) {
    hp_.validate();
    actor_ = Mlp::init(net_dims(obs_dim, action_dim, hp_), Head::squash, init_rng);
    const int head = static_cast<int>(actor_.dims().size()) - 2;
    for (int j = 0; j < action_dim; ++j)
        actor_.params()[actor_.bias_offset(head) + static_cast<std::size_t>(j)] = hp_.actor_head_bias;
    critic_ = Mlp::init(net_dims(obs_dim + action_dim, 1, hp_), Head::identity, init_rng);
    actor_target_ = actor_;
    critic_target_ = critic_;
    actor_opt_ = Adam(actor_.param_count(), hp_.actor_lr);
    critic_opt_ = Adam(critic_.param_count(), hp_.critic_lr);
    critic_grad_.assign(critic_.param_count(), 0.0);
    actor_grad_.assign(actor_.param_count(), 0.0);
    input_grad_sink_.assign(critic_.param_count(), 0.0);
}

std::vector<double> DdpgAgent::act(const std::vector<double>& obs) const {
    return actor_.forward(obs);
}

std::vector<double> DdpgAgent::act_noisy(const std::vector<double>& obs, double sigma,
                                         RngStream& rng) const {
    std::vector<double> a = actor_.forward(obs);
    for (double& x : a) x = std::clamp(x + rng.normal(0.0, sigma), 0.0, 1.0);
    return a;
}

DdpgAgent::UpdateStats DdpgAgent::update(const ReplayBuffer& buffer, RngStream& sample_rng) {
    std::vector<const Transition*> batch;
    batch.reserve(static_cast<std::size_t>(hp_.batch_size));
    for (int i = 0; i < hp_.batch_size; ++i) batch.push_back(&buffer.sample(sample_rng));
    return update_batch(batch);
}

DdpgAgent::UpdateStats DdpgAgent::update_batch(const std::vector<const Transition*>& batch) {
    if (batch.empty()) throw ContractViolation("DdpgAgent::update_batch: empty batch");
    const double inv_b = 1.0 / static_cast<double>(batch.size());
    UpdateStats stats;

    // Critic regression toward y = r + gamma*(1-terminal)*Q'(s', mu'(s')).
    std::fill(critic_grad_.begin(), critic_grad_.end(), 0.0);
    std::vector<double> upstream(1);
    for (const Transition* tr : batch) {
        double y = tr->reward;
        if (!tr->terminal) {
            const std::vector<double> next_action = actor_target_.forward(tr->next_obs);
            const std::vector<double> qn =
                critic_target_.forward(concat(tr->next_obs, next_action));
            y += hp_.gamma * qn[0];
        }
        const std::vector<double> in = concat(tr->obs, tr->action);
        const double q = critic_.forward(in, ws_c_)[0];
        const double err = q - y;
        stats.critic_loss += err * err * inv_b;
        upstream[0] = 2.0 * err * inv_b;
        critic_.backward(in, ws_c_, upstream, critic_grad_);
    }
    critic_opt_.step(critic_.params(), critic_grad_);

    // Actor ascent on Q(s, mu(s)): minimize -Q.
    std::fill(actor_grad_.begin(), actor_grad_.end(), 0.0);
    std::fill(input_grad_sink_.begin(), input_grad_sink_.end(), 0.0);
    upstream[0] = -inv_b;
    for (const Transition* tr : batch) {
        const std::vector<double>& a = actor_.forward(tr->obs, ws_a_);
        const std::vector<double> in = concat(tr->obs, a);
        stats.actor_value += critic_.forward(in, ws_c_)[0] * inv_b;
        const std::vector<double> dq_din = critic_.backward(in, ws_c_, upstream, input_grad_sink_);
        const std::vector<double> da(dq_din.end() - action_dim_, dq_din.end());
        actor_.backward(tr->obs, ws_a_, da, actor_grad_);
    }
    actor_opt_.step(actor_.params(), actor_grad_);

    soft_update(actor_target_, actor_, hp_.tau);
    soft_update(critic_target_, critic_, hp_.tau);
    return stats;
}

void DdpgAgent::reset_targets() {
    actor_target_ = actor_;
    critic_target_ = critic_;
}

void DdpgAgent::save(const std::string& dir, const std::string& prefix) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    actor_.save((fs::path(dir) / (prefix + "_actor.bin")).string());
    critic_.save((fs::path(dir) / (prefix + "_critic.bin")).string());
}

const char* mode_name(Mode mode) { return mode == Mode::naive ? "naive" : "managed"; }

Trainer::Trainer(const ExperimentConfig& cfg, Mode mode, std::uint64_t seed)
    : cfg_(cfg), mode_(mode), seed_(seed) {
    cfg_.validate();
    const int raw_len = agent_observation_length(cfg_.env);
    const int agent_obs = mode_ == Mode::managed ? raw_len + kNumSuppliers : raw_len;
    for (int i = 0; i < kNumFactories; ++i) {
        RngStream init = RngStream::substream(seed_, "agent-init", static_cast<std::uint64_t>(i));
        agents_.emplace_back(agent_obs, kNumSuppliers, cfg_.ddpg, init);
        buffers_.emplace_back(cfg_.ddpg.replay_capacity);
        noise_rng_.push_back(
            RngStream::substream(seed_, "agent-noise", static_cast<std::uint64_t>(i)));
        sample_rng_.push_back(
            RngStream::substream(seed_, "agent-sample", static_cast<std::uint64_t>(i)));
    }
    if (mode_ == Mode::managed) {
        RngStream init = RngStream::substream(seed_, "manager-init", 0);
        DdpgParams mhp = cfg_.ddpg;
        mhp.actor_head_bias = cfg_.ddpg.manager_head_bias;
        manager_.emplace(manager_observation_length(cfg_.env),
                         kNumFactories * kNumSuppliers, mhp, init);
        manager_buffer_.emplace(cfg_.ddpg.replay_capacity);
        manager_noise_rng_ = RngStream::substream(seed_, "manager-noise", 0);
        manager_sample_rng_ = RngStream::substream(seed_, "manager-sample", 0);
    }
}

double Trainer::sigma_at(long global_step) const {
    const DdpgParams& hp = cfg_.ddpg;
    const long horizon = cfg_.noise_decay_steps_effective();
    const double frac =
        horizon <= 0 ? 1.0
                     : std::min(1.0, static_cast<double>(global_step) / static_cast<double>(horizon));
    return hp.noise_sigma_start + (hp.noise_sigma_end - hp.noise_sigma_start) * frac;
}

ManagerAction Trainer::manager_act(const std::vector<double>& m_obs, double sigma) {
    ManagerAction aux{};
    if (cfg_.frozen_zero_manager) return aux; // all-zero auxiliary states
    const std::vector<double> flat = manager_->act_noisy(m_obs, sigma, manager_noise_rng_);
    for (int f = 0; f < kNumFactories; ++f)
        for (int s = 0; s < kNumSuppliers; ++s)
            aux[f][s] = flat[static_cast<std::size_t>(f * kNumSuppliers + s)];
    return aux;
}

EpisodeMetrics Trainer::train_episode() {
    EpisodeMetrics m =
        mode_ == Mode::naive ? train_episode_naive() : train_episode_managed();
    m.episode = episode_;
    episode_ += 1;
    const double inv_f = 1.0 / static_cast<double>(kNumFactories);
    m.factory_score = (m.shaped_reward_mean[0] + m.shaped_reward_mean[1] + m.shaped_reward_mean[2]) * inv_f;
    m.raw_score = (m.raw_reward_mean[0] + m.raw_reward_mean[1] + m.raw_reward_mean[2]) * inv_f;
    m.manager_score = m.manager_reward_mean * inv_f;
    return m;
}

std::vector<EpisodeMetrics> Trainer::train_all() {
    std::vector<EpisodeMetrics> out;
    out.reserve(static_cast<std::size_t>(cfg_.episodes));
    for (int e = 0; e < cfg_.episodes; ++e) out.push_back(train_episode());
    return out;
}

EpisodeMetrics Trainer::train_episode_naive() {
    EpisodeMetrics m;
    const std::uint64_t env_seed =
        RngStream::substream_seed(seed_, "episode", static_cast<std::uint64_t>(episode_));
    SupplyChainState env = reset(cfg_.env, env_seed);
    std::array<std::vector<double>, kNumFactories> obs;
    for (int f = 0; f < kNumFactories; ++f) obs[f] = build_agent_observation(env, f);

    const double inv_t = 1.0 / static_cast<double>(cfg_.env.t_max);
    const double inv_tf = inv_t / static_cast<double>(kNumFactories);
    for (int t = 0; t < cfg_.env.t_max; ++t) {
        const double sigma = sigma_at(global_step_);
        JointAction orders{};
        std::array<std::vector<double>, kNumFactories> actions;
        for (int f = 0; f < kNumFactories; ++f) {
            actions[f] = agents_[static_cast<std::size_t>(f)].act_noisy(obs[f], sigma,
                                                                        noise_rng_[static_cast<std::size_t>(f)]);
            orders[f] = quantize_orders({actions[f][0], actions[f][1]});
        }
        JointStepResult res = joint_step(env, orders);
        for (int f = 0; f < kNumFactories; ++f) {
            buffers_[static_cast<std::size_t>(f)].push({std::move(obs[f]), std::move(actions[f]),
                                                        res.rewards[f],
                                                        res.observations[f], res.terminal});
            obs[f] = std::move(res.observations[f]);
        }
        for (int f = 0; f < kNumFactories; ++f)
            if (buffers_[static_cast<std::size_t>(f)].size() >= cfg_.ddpg.warmup)
                agents_[static_cast<std::size_t>(f)].update(buffers_[static_cast<std::size_t>(f)],
                                                            sample_rng_[static_cast<std::size_t>(f)]);
        global_step_ += 1;

        double raw_sum = 0.0;
        for (int f = 0; f < kNumFactories; ++f) {
            m.profit_mean[f] += res.outcome.profit_reward[f] * inv_t;
            m.raw_reward_mean[f] += res.rewards[f] * inv_t;
            m.shaped_reward_mean[f] += res.rewards[f] * inv_t;
            raw_sum += res.rewards[f];
            for (int s = 0; s < kNumSuppliers; ++s) m.orders_mean[s] += orders[f][s] * inv_tf;
        }
        m.ofr_mean += res.outcome.ofr * inv_t;
        m.ofr_reward_mean += res.outcome.ofr_reward * inv_t;
        m.manager_reward_mean += raw_sum * inv_t; // zero incentives in naive mode
    }
    return m;
}

EpisodeMetrics Trainer::train_episode_managed() {
    EpisodeMetrics m;
    const std::uint64_t env_seed =
        RngStream::substream_seed(seed_, "episode", static_cast<std::uint64_t>(episode_));
    MediatedGame game(cfg_.env, env_seed, cfg_.incentive_scale);

    std::vector<double> m_obs = build_manager_observation(game.state(), JointAction{});
    ManagerAction aux = manager_act(m_obs, sigma_at(global_step_));
    std::array<std::vector<double>, kNumFactories> agent_in;
    for (int f = 0; f < kNumFactories; ++f)
        agent_in[f] = augment_observation(build_agent_observation(game.state(), f), aux[f]);

    const double inv_t = 1.0 / static_cast<double>(cfg_.env.t_max);
    const double inv_tf = inv_t / static_cast<double>(kNumFactories);
    for (int t = 0; t < cfg_.env.t_max; ++t) {
        const double sigma = sigma_at(global_step_);
        JointAction orders{};
        std::array<std::vector<double>, kNumFactories> actions;
        for (int f = 0; f < kNumFactories; ++f) {
            actions[f] = agents_[static_cast<std::size_t>(f)].act_noisy(agent_in[f], sigma,
                                                                        noise_rng_[static_cast<std::size_t>(f)]);
            orders[f] = quantize_orders({actions[f][0], actions[f][1]});
        }
        MediatedStepResult res = game.step(aux, orders);

        // The manager picks the next auxiliary states before agent transitions
        // are stored, because the agents' next observations include them.
        const ManagerAction next_aux = manager_act(res.manager_observation, sigma);
        std::array<std::vector<double>, kNumFactories> next_in;
        for (int f = 0; f < kNumFactories; ++f)
            next_in[f] = augment_observation(res.observations[f], next_aux[f]);

        for (int f = 0; f < kNumFactories; ++f)
            buffers_[static_cast<std::size_t>(f)].push({std::move(agent_in[f]),
                                                        std::move(actions[f]),
                                                        res.shaped_rewards[f], next_in[f],
                                                        res.terminal});
        if (!cfg_.frozen_zero_manager) {
            std::vector<double> aux_flat(kNumFactories * kNumSuppliers);
            for (int f = 0; f < kNumFactories; ++f)
                for (int s = 0; s < kNumSuppliers; ++s)
                    aux_flat[static_cast<std::size_t>(f * kNumSuppliers + s)] = aux[f][s];
            manager_buffer_->push({std::move(m_obs), std::move(aux_flat), res.manager_reward,
                                   res.manager_observation, res.terminal});
        }

        for (int f = 0; f < kNumFactories; ++f)
            if (buffers_[static_cast<std::size_t>(f)].size() >= cfg_.ddpg.warmup)
                agents_[static_cast<std::size_t>(f)].update(buffers_[static_cast<std::size_t>(f)],
                                                            sample_rng_[static_cast<std::size_t>(f)]);
        if (!cfg_.frozen_zero_manager &&
            manager_buffer_->size() >= std::max(cfg_.ddpg.warmup, cfg_.ddpg.manager_warmup))
            manager_->update(*manager_buffer_, manager_sample_rng_);
        global_step_ += 1;

        for (int f = 0; f < kNumFactories; ++f) {
            m.profit_mean[f] += res.outcome.profit_reward[f] * inv_t;
            m.raw_reward_mean[f] += res.raw_rewards[f] * inv_t;
            m.incentive_mean[f] += res.incentives[f] * inv_t;
            m.shaped_reward_mean[f] += res.shaped_rewards[f] * inv_t;
            for (int s = 0; s < kNumSuppliers; ++s) m.orders_mean[s] += orders[f][s] * inv_tf;
        }
        m.ofr_mean += res.outcome.ofr * inv_t;
        m.ofr_reward_mean += res.outcome.ofr_reward * inv_t;
        m.manager_reward_mean += res.manager_reward * inv_t;

        agent_in = std::move(next_in);
        m_obs = std::move(res.manager_observation);
        aux = next_aux;
    }
    return m;
}

void Trainer::save_checkpoints(const std::string& dir) const {
    for (int f = 0; f < kNumFactories; ++f)
        agents_[static_cast<std::size_t>(f)].save(dir, "agent" + std::to_string(f));
    if (manager_) manager_->save(dir, "manager");
}

}  // namespace scmarl
