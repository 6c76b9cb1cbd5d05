#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scmarl/config.hpp"
#include "scmarl/manager.hpp"
#include "scmarl/nn.hpp"
#include "scmarl/supply_chain.hpp"

namespace scmarl {

struct Transition {
    std::vector<double> obs;
    std::vector<double> action; // continuous actor output in [0,1]^d, pre-quantization
    double reward = 0.0;
    std::vector<double> next_obs;
    bool terminal = false;
};

// Bounded FIFO with uniform sampling (with replacement) over current contents.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);
    void push(Transition t);
    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& at(std::size_t i) const { return data_[i]; }
    const Transition& sample(RngStream& rng) const;

private:
    std::vector<Transition> data_;
    std::size_t capacity_;
    std::size_t next_ = 0; // overwrite cursor once full
};

// floor(100*x) with 1.0 clamped to 99; requires x in [0,1].
int quantize_component(double x);
std::array<int, kNumSuppliers> quantize_orders(const std::array<double, kNumSuppliers>& action01);

// One DDPG learner: squashing actor, identity-head critic over obs ⊕ action,
// soft-updated target copies, one optimizer per network.
class DdpgAgent {
public:
    DdpgAgent(int obs_dim, int action_dim, const DdpgParams& hp, RngStream init_rng);

    int obs_dim() const { return obs_dim_; }
    int action_dim() const { return action_dim_; }

    // Deterministic policy output, components in (0,1).
    std::vector<double> act(const std::vector<double>& obs) const;
    // Policy + Gaussian exploration noise, clamped to [0,1].
    std::vector<double> act_noisy(const std::vector<double>& obs, double sigma,
                                  RngStream& rng) const;

    struct UpdateStats {
        double critic_loss = 0.0; // mean squared TD error over the batch
        double actor_value = 0.0; // mean critic value of the current policy
    };
    // One gradient step on a uniformly sampled batch, then soft target updates.
    UpdateStats update(const ReplayBuffer& buffer, RngStream& sample_rng);
    UpdateStats update_batch(const std::vector<const Transition*>& batch);

    Mlp& actor() { return actor_; }
    const Mlp& actor() const { return actor_; }
    Mlp& critic() { return critic_; }
    const Mlp& critic() const { return critic_; }
    const Mlp& actor_target() const { return actor_target_; }
    const Mlp& critic_target() const { return critic_target_; }
    // Re-syncs targets to the online networks (after test-side weight surgery).
    void reset_targets();

    void save(const std::string& dir, const std::string& prefix) const;

private:
    int obs_dim_, action_dim_;
    DdpgParams hp_;
    Mlp actor_, critic_, actor_target_, critic_target_;
    Adam actor_opt_, critic_opt_;
    // Scratch buffers reused across updates.
    std::vector<double> critic_grad_, actor_grad_, input_grad_sink_;
    Mlp::Workspace ws_a_, ws_c_;
};

enum class Mode { naive, managed };
const char* mode_name(Mode mode);

// Per-episode aggregates; every *_mean field is a per-step average over the
// episode (orders additionally averaged over factories).
struct EpisodeMetrics {
    int episode = 0;
    std::array<double, kNumFactories> profit_mean{};
    double ofr_mean = 0.0;
    double ofr_reward_mean = 0.0;
    std::array<double, kNumFactories> raw_reward_mean{};
    std::array<double, kNumFactories> incentive_mean{}; // all zero in naive mode
    std::array<double, kNumFactories> shaped_reward_mean{};
    double manager_reward_mean = 0.0;
    std::array<double, kNumSuppliers> orders_mean{};
    // Scores, per the report normalization: per-step per-factory means.
    double factory_score = 0.0; // shaped
    double raw_score = 0.0;     // incentive-excluded
    double manager_score = 0.0; // manager_reward_mean / 3
};

// Owns the learners and runs training episodes for one (mode, seed) pair.
// Every random draw flows from named substreams of `seed`, so runs are
// reproducible bit-for-bit.
class Trainer {
public:
    Trainer(const ExperimentConfig& cfg, Mode mode, std::uint64_t seed);

    EpisodeMetrics train_episode();
    std::vector<EpisodeMetrics> train_all();

    Mode mode() const { return mode_; }
    std::uint64_t seed() const { return seed_; }
    int episodes_done() const { return episode_; }
    double sigma_at(long global_step) const; // linear exploration-noise decay

    DdpgAgent& agent(int i) { return agents_[static_cast<std::size_t>(i)]; }
    DdpgAgent* manager() { return manager_ ? &*manager_ : nullptr; }

    void save_checkpoints(const std::string& dir) const;

private:
    EpisodeMetrics train_episode_naive();
    EpisodeMetrics train_episode_managed();
    ManagerAction manager_act(const std::vector<double>& m_obs, double sigma);

    ExperimentConfig cfg_;
    Mode mode_;
    std::uint64_t seed_;
    std::vector<DdpgAgent> agents_;
    std::optional<DdpgAgent> manager_;
    std::vector<ReplayBuffer> buffers_;
    std::optional<ReplayBuffer> manager_buffer_;
    std::vector<RngStream> noise_rng_;
    std::vector<RngStream> sample_rng_;
    RngStream manager_noise_rng_;
    RngStream manager_sample_rng_;
    long global_step_ = 0;
    int episode_ = 0;
};

}  // namespace scmarl
