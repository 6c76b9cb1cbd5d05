#include "scmarl/nn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "scmarl/errors.hpp"

namespace scmarl {

namespace {

double squash(double x) { return (std::tanh(x) + 1.0) * 0.5; }

}  // namespace

Mlp::Mlp(std::vector<int> dims, Head head) : dims_(std::move(dims)), head_(head) {
    if (dims_.size() < 2) throw ContractViolation("Mlp: need at least input and output dims");
    for (int d : dims_)
        if (d < 1) throw ContractViolation("Mlp: layer widths must be positive");
    std::size_t n = 0;
    for (int l = 0; l + 1 < static_cast<int>(dims_.size()); ++l) {
        weight_offsets_.push_back(n);
        n += static_cast<std::size_t>(dims_[l + 1]) * static_cast<std::size_t>(dims_[l]);
        bias_offsets_.push_back(n);
        n += static_cast<std::size_t>(dims_[l + 1]);
    }
    params_.assign(n, 0.0);
}

Mlp Mlp::init(std::vector<int> dims, Head head, RngStream& rng) {
    Mlp net(std::move(dims), head);
    for (int l = 0; l < net.layer_count(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(net.dims_[l]));
        const std::size_t begin = net.weight_offset(l);
        const std::size_t end = net.bias_offset(l) + static_cast<std::size_t>(net.dims_[l + 1]);
        for (std::size_t i = begin; i < end; ++i)
            net.params_[i] = (rng.uniform01() * 2.0 - 1.0) * bound;
    }
    return net;
}

std::size_t Mlp::weight_offset(int layer) const {
    return weight_offsets_[static_cast<std::size_t>(layer)];
}

std::size_t Mlp::bias_offset(int layer) const {
    return bias_offsets_[static_cast<std::size_t>(layer)];
}

const std::vector<double>& Mlp::forward(const std::vector<double>& input, Workspace& ws) const {
    if (static_cast<int>(input.size()) != input_size())
        throw ContractViolation("Mlp::forward: input length " + std::to_string(input.size()) +
                                ", expected " + std::to_string(input_size()));
    const int layers = layer_count();
    ws.pre.resize(static_cast<std::size_t>(layers));
    ws.post.resize(static_cast<std::size_t>(layers));
    const std::vector<double>* src = &input;
    for (int l = 0; l < layers; ++l) {
        const int in = dims_[l], out = dims_[l + 1];
        auto& pre = ws.pre[static_cast<std::size_t>(l)];
        auto& post = ws.post[static_cast<std::size_t>(l)];
        pre.resize(static_cast<std::size_t>(out));
        post.resize(static_cast<std::size_t>(out));
        const double* w = params_.data() + weight_offset(l);
        const double* b = params_.data() + bias_offset(l);
        const double* x = src->data();
        for (int o = 0; o < out; ++o) {
            const double* row = w + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
            double acc = b[o];
            for (int i = 0; i < in; ++i) acc += row[i] * x[i];
            pre[static_cast<std::size_t>(o)] = acc;
        }
        const bool last = (l == layers - 1);
        for (int o = 0; o < out; ++o) {
            const double z = pre[static_cast<std::size_t>(o)];
            double a;
            if (!last)
                a = z > 0.0 ? z : 0.0;
            else if (head_ == Head::squash)
                a = squash(z);
            else
                a = z;
            post[static_cast<std::size_t>(o)] = a;
        }
        src = &post;
    }
    return ws.post.back();
}

std::vector<double> Mlp::forward(const std::vector<double>& input) const {
    Workspace ws;
    return forward(input, ws);
}

std::vector<double> Mlp::backward(const std::vector<double>& input, const Workspace& ws,
                                  const std::vector<double>& output_grad,
                                  std::vector<double>& param_grad) const {
    if (static_cast<int>(output_grad.size()) != output_size())
        throw ContractViolation("Mlp::backward: output_grad length mismatch");
    if (param_grad.size() != params_.size())
        throw ContractViolation("Mlp::backward: param_grad layout mismatch");
    const int layers = layer_count();
    if (static_cast<int>(ws.post.size()) != layers)
        throw ContractViolation("Mlp::backward: workspace does not match a forward pass");

    // dL/dz for the current layer, walking from the output back to the input.
    std::vector<double> delta(output_grad);
    for (int o = 0; o < output_size(); ++o) {
        if (head_ == Head::squash) {
            // y = (tanh(z)+1)/2 => dy/dz = (1 - tanh(z)^2)/2, tanh(z) = 2y-1.
            const double t = 2.0 * ws.post.back()[static_cast<std::size_t>(o)] - 1.0;
            delta[static_cast<std::size_t>(o)] *= 0.5 * (1.0 - t * t);
        }
    }

    std::vector<double> next_delta;
    for (int l = layers - 1; l >= 0; --l) {
        const int in = dims_[l], out = dims_[l + 1];
        const std::vector<double>& x =
            (l == 0) ? input : ws.post[static_cast<std::size_t>(l - 1)];
        double* wg = param_grad.data() + weight_offset(l);
        double* bg = param_grad.data() + bias_offset(l);
        for (int o = 0; o < out; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            if (d != 0.0) {
                double* row = wg + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
                for (int i = 0; i < in; ++i) row[i] += d * x[static_cast<std::size_t>(i)];
            }
            bg[o] += d;
        }
        next_delta.assign(static_cast<std::size_t>(in), 0.0);
        const double* w = params_.data() + weight_offset(l);
        for (int o = 0; o < out; ++o) {
            const double d = delta[static_cast<std::size_t>(o)];
            if (d == 0.0) continue;
            const double* row = w + static_cast<std::size_t>(o) * static_cast<std::size_t>(in);
            for (int i = 0; i < in; ++i) next_delta[static_cast<std::size_t>(i)] += d * row[i];
        }
        if (l > 0) {
            // Rectifier derivative of the layer below.
            const auto& pre_below = ws.pre[static_cast<std::size_t>(l - 1)];
            for (int i = 0; i < in; ++i)
                if (pre_below[static_cast<std::size_t>(i)] <= 0.0)
                    next_delta[static_cast<std::size_t>(i)] = 0.0;
        }
        delta.swap(next_delta);
    }
    return delta;
}

void Mlp::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    const char magic[4] = {'S', 'C', 'N', 'N'};
    out.write(magic, 4);
    auto put_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    put_u32(1); // version
    put_u32(head_ == Head::squash ? 1u : 0u);
    put_u32(static_cast<std::uint32_t>(dims_.size()));
    for (int d : dims_) put_u32(static_cast<std::uint32_t>(d));
    out.write(reinterpret_cast<const char*>(params_.data()),
              static_cast<std::streamsize>(params_.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write on checkpoint: " + path);
}

Mlp Mlp::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "SCNN", 4) != 0)
        throw std::runtime_error("bad checkpoint magic: " + path);
    auto get_u32 = [&] {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    const std::uint32_t version = get_u32();
    if (version != 1) throw std::runtime_error("unsupported checkpoint version: " + path);
    const Head head = get_u32() == 1 ? Head::squash : Head::identity;
    const std::uint32_t ndims = get_u32();
    if (!in || ndims < 2 || ndims > 64) throw std::runtime_error("bad checkpoint dims: " + path);
    std::vector<int> dims(ndims);
    for (auto& d : dims) d = static_cast<int>(get_u32());
    Mlp net(dims, head);
    in.read(reinterpret_cast<char*>(net.params_.data()),
            static_cast<std::streamsize>(net.params_.size() * sizeof(double)));
    if (!in || in.gcount() != static_cast<std::streamsize>(net.params_.size() * sizeof(double)))
        throw std::runtime_error("truncated checkpoint: " + path);
    return net;
}

Adam::Adam(std::size_t n, double lr, double beta1, double beta2, double epsilon)
    : lr_(lr), beta1_(beta1), beta2_(beta2), epsilon_(epsilon), m_(n, 0.0), v_(n, 0.0) {}

void Adam::step(std::vector<double>& params, const std::vector<double>& grad) {
    if (params.size() != m_.size() || grad.size() != m_.size())
        throw ContractViolation("Adam::step: size mismatch");
    t_ += 1;
    const double corr1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    const double corr2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
        const double mhat = m_[i] / corr1;
        const double vhat = v_[i] / corr2;
        params[i] -= lr_ * mhat / (std::sqrt(vhat) + epsilon_);
    }
}

void soft_update(std::vector<double>& target, const std::vector<double>& online, double tau) {
    if (target.size() != online.size())
        throw ContractViolation("soft_update: size mismatch");
    for (std::size_t i = 0; i < target.size(); ++i)
        target[i] = tau * online[i] + (1.0 - tau) * target[i];
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
    if (target.dims() != online.dims())
        throw ContractViolation("soft_update: architecture mismatch");
    soft_update(target.params(), online.params(), tau);
}

FdCheckResult finite_difference_check(const Mlp& net, const std::vector<double>& input,
                                      std::uint64_t seed, double h, bool corrupt_largest) {
    RngStream rng = RngStream::substream(seed, "fd-probe", 0);
    std::vector<double> coeff(static_cast<std::size_t>(net.output_size()));
    for (double& c : coeff) c = rng.uniform01() * 2.0 - 1.0;

    Mlp::Workspace ws;
    net.forward(input, ws);
    std::vector<double> analytic(net.param_count(), 0.0);
    net.backward(input, ws, coeff, analytic);

    if (corrupt_largest) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < analytic.size(); ++i)
            if (std::abs(analytic[i]) > std::abs(analytic[worst])) worst = i;
        analytic[worst] *= 2.0;
    }

    Mlp probe = net;
    auto loss = [&] {
        const std::vector<double> y = probe.forward(input);
        double acc = 0.0;
        for (std::size_t k = 0; k < coeff.size(); ++k) acc += coeff[k] * y[k];
        return acc;
    };

    FdCheckResult result;
    for (std::size_t i = 0; i < probe.param_count(); ++i) {
        const double saved = probe.params()[i];
        probe.params()[i] = saved + h;
        const double up = loss();
        probe.params()[i] = saved - h;
        const double down = loss();
        probe.params()[i] = saved;
        const double fd = (up - down) / (2.0 * h);
        const double denom = std::max({std::abs(fd), std::abs(analytic[i]), 1e-2});
        const double rel = std::abs(fd - analytic[i]) / denom;
        if (rel > result.max_rel_error) {
            result.max_rel_error = rel;
            result.worst_index = i;
        }
    }
    return result;
}

}  // namespace scmarl
