#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scmarl/rng.hpp"

namespace scmarl {

enum class Head {
    identity, // linear output (critics)
    squash,   // x -> (tanh(x)+1)/2, output in (0,1) (actors)
};

// Fully-connected network with rectifier hidden layers, double precision
// throughout. Parameters live in one flat vector: for each layer, the weight
// matrix row-major [out x in] followed by the bias [out].
class Mlp {
public:
    Mlp() = default;
    Mlp(std::vector<int> dims, Head head); // all parameters zero

    // Uniform fan-in initialization: W, b ~ U(-1/sqrt(fan_in), +1/sqrt(fan_in)).
    static Mlp init(std::vector<int> dims, Head head, RngStream& rng);

    int input_size() const { return dims_.front(); }
    int output_size() const { return dims_.back(); }
    int layer_count() const { return static_cast<int>(dims_.size()) - 1; }
    const std::vector<int>& dims() const { return dims_; }
    Head head() const { return head_; }
    std::size_t param_count() const { return params_.size(); }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }
    std::size_t weight_offset(int layer) const;
    std::size_t bias_offset(int layer) const;

    // Per-layer activations kept for the backward pass. Reusable across calls
    // to avoid churn in training loops.
    struct Workspace {
        std::vector<std::vector<double>> pre;  // pre-activation per layer
        std::vector<std::vector<double>> post; // post-activation per layer
    };

    std::vector<double> forward(const std::vector<double>& input) const;
    // Returns ws.post.back(). Throws ContractViolation on length mismatch.
    const std::vector<double>& forward(const std::vector<double>& input, Workspace& ws) const;

    // Exact reverse-mode gradients of the forward map: accumulates dL/dparams
    // into param_grad (same layout as params()) and returns dL/dinput.
    // `ws` must come from a forward pass on the same input.
    std::vector<double> backward(const std::vector<double>& input, const Workspace& ws,
                                 const std::vector<double>& output_grad,
                                 std::vector<double>& param_grad) const;

    // Flat binary checkpoint: "SCNN", u32 version, u32 head, u32 ndims,
    // u32 dims[ndims], f64 params (little-endian host order).
    void save(const std::string& path) const;
    static Mlp load(const std::string& path);

    bool operator==(const Mlp&) const = default;

private:
    std::vector<int> dims_;
    Head head_ = Head::identity;
    std::vector<double> params_;
    std::vector<std::size_t> weight_offsets_;
    std::vector<std::size_t> bias_offsets_;
};

// Adaptive-moment optimizer with bias correction.
class Adam {
public:
    Adam() = default;
    explicit Adam(std::size_t n, double lr = 1e-3, double beta1 = 0.9, double beta2 = 0.999,
                  double epsilon = 1e-8);
    void step(std::vector<double>& params, const std::vector<double>& grad);
    long steps_taken() const { return t_; }
    double learning_rate() const { return lr_; }

private:
    double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, epsilon_ = 1e-8;
    long t_ = 0;
    std::vector<double> m_, v_;
};

// target <- tau*online + (1-tau)*target
void soft_update(std::vector<double>& target, const std::vector<double>& online, double tau);
void soft_update(Mlp& target, const Mlp& online, double tau);

struct FdCheckResult {
    double max_rel_error = 0.0;
    std::size_t worst_index = 0;
};

// Compares backward() against central finite differences of the scalar probe
// loss c . f(x), with fixed pseudo-random coefficients c drawn from `seed`.
// With corrupt_largest the largest-magnitude analytic gradient entry is
// doubled first, so a correct implementation must report a large error (used
// to prove the check can fail). Intended for small nets (<= ~1e4 parameters).
FdCheckResult finite_difference_check(const Mlp& net, const std::vector<double>& input,
                                      std::uint64_t seed, double h = 1e-4,
                                      bool corrupt_largest = false);

}  // namespace scmarl
