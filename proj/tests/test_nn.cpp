#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "scmarl/errors.hpp"
#include "scmarl/nn.hpp"

using namespace scmarl;

namespace {

std::vector<double> random_input(int n, RngStream& rng) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = rng.uniform01() * 2.0 - 1.0;
    return x;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("parameter layout: count, offsets, and single-weight response") {
    Mlp net({3, 4, 2}, Head::identity);
    // layer 0: 4x3 weights + 4 biases, layer 1: 2x4 weights + 2 biases.
    CHECK(net.param_count() == 12 + 4 + 8 + 2);
    CHECK(net.weight_offset(0) == 0);
    CHECK(net.bias_offset(0) == 12);
    CHECK(net.weight_offset(1) == 16);
    CHECK(net.bias_offset(1) == 24);

    // W0[row 1][col 2] = 5, W1[row 0][col 1] = 2: forward must compose them.
    net.params()[net.weight_offset(0) + 1 * 3 + 2] = 5.0;
    net.params()[net.weight_offset(1) + 0 * 4 + 1] = 2.0;
    const std::vector<double> y = net.forward({0.0, 0.0, 1.5});
    CHECK(y[0] == doctest::Approx(2.0 * 5.0 * 1.5)); // relu(7.5) = 7.5
    CHECK(y[1] == 0.0);

    // Negative pre-activation is cut by the rectifier.
    const std::vector<double> y2 = net.forward({0.0, 0.0, -1.5});
    CHECK(y2[0] == 0.0);
}

TEST_CASE("zero-parameter networks produce the head's fixed point") {
    Mlp critic({5, 8, 1}, Head::identity);
    Mlp actor({5, 8, 2}, Head::squash);
    RngStream rng(3);
    const std::vector<double> x = random_input(5, rng);
    CHECK(critic.forward(x) == std::vector<double>{0.0});
    const std::vector<double> a = actor.forward(x);
    CHECK(a[0] == 0.5); // (tanh(0)+1)/2
    CHECK(a[1] == 0.5);
}

TEST_CASE("squash head stays strictly inside (0,1)") {
    RngStream rng(17);
    Mlp actor = Mlp::init({6, 16, 16, 3}, Head::squash, rng);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> x = random_input(6, rng);
        for (double& v : x) v *= 50.0; // exaggerate to push tanh to saturation
        for (double y : actor.forward(x)) {
            CHECK(y >= 0.0);
            CHECK(y <= 1.0);
        }
    }
}

TEST_CASE("initialization is fan-in bounded and seed deterministic") {
    RngStream a(11), b(11), c(12);
    const Mlp na = Mlp::init({4, 9, 2}, Head::identity, a);
    const Mlp nb = Mlp::init({4, 9, 2}, Head::identity, b);
    const Mlp nc = Mlp::init({4, 9, 2}, Head::identity, c);
    CHECK(na == nb);
    CHECK(na.params() != nc.params());

    const double bound0 = 1.0 / std::sqrt(4.0);
    for (std::size_t i = na.weight_offset(0); i < na.weight_offset(1); ++i) {
        CHECK(na.params()[i] >= -bound0);
        CHECK(na.params()[i] <= bound0);
    }
    const double bound1 = 1.0 / std::sqrt(9.0);
    for (std::size_t i = na.weight_offset(1); i < na.param_count(); ++i) {
        CHECK(na.params()[i] >= -bound1);
        CHECK(na.params()[i] <= bound1);
    }
}

TEST_CASE("forward validates input length") {
    Mlp net({3, 4, 1}, Head::identity);
    CHECK_THROWS_AS((void)net.forward({1.0, 2.0}), ContractViolation);
    Mlp::Workspace ws;
    CHECK_THROWS_AS((void)net.forward({1.0, 2.0, 3.0, 4.0}, ws), ContractViolation);
}

TEST_CASE("backward matches finite differences on assorted shapes") {
    RngStream rng(2025);
    const struct {
        std::vector<int> dims;
        Head head;
    } cases[] = {
        {{4, 8, 8, 2}, Head::squash},
        {{6, 16, 1}, Head::identity},
        {{3, 5, 5, 5, 2}, Head::squash},
        {{2, 1}, Head::identity},
    };
    for (const auto& c : cases) {
        Mlp net = Mlp::init(c.dims, c.head, rng);
        const std::vector<double> x = random_input(c.dims.front(), rng);
        const FdCheckResult r = finite_difference_check(net, x, 77);
        INFO("dims front ", c.dims.front(), " layers ", c.dims.size());
        CHECK(r.max_rel_error < 1e-4);
    }
}

TEST_CASE("fault injection makes the finite-difference check fail") {
    RngStream rng(6);
    Mlp net = Mlp::init({4, 8, 8, 2}, Head::squash, rng);
    const std::vector<double> x = random_input(4, rng);
    const FdCheckResult r = finite_difference_check(net, x, 77, 1e-4, true);
    CHECK(r.max_rel_error > 1e-2);
}

TEST_CASE("backward returns the input gradient of a known linear map") {
    // Single identity layer: y = Wx + b, so dL/dx = W^T g exactly.
    Mlp net({2, 2}, Head::identity);
    net.params() = {1.0, 2.0, 3.0, 4.0, 0.5, -0.5}; // W = [[1,2],[3,4]], b = [0.5,-0.5]
    Mlp::Workspace ws;
    const std::vector<double> x{10.0, 20.0};
    const std::vector<double>& y = net.forward(x, ws);
    CHECK(y[0] == doctest::Approx(50.5));
    CHECK(y[1] == doctest::Approx(109.5));

    std::vector<double> grad(net.param_count(), 0.0);
    const std::vector<double> dx = net.backward(x, ws, {1.0, 1.0}, grad);
    CHECK(dx[0] == doctest::Approx(4.0)); // 1*1 + 3*1
    CHECK(dx[1] == doctest::Approx(6.0)); // 2*1 + 4*1
    CHECK(grad[0] == doctest::Approx(10.0));
    CHECK(grad[1] == doctest::Approx(20.0));
    CHECK(grad[4] == doctest::Approx(1.0)); // biases get the upstream gradient
    CHECK(grad[5] == doctest::Approx(1.0));
}

TEST_CASE("backward accumulates parameter gradients across calls") {
    RngStream rng(9);
    Mlp net = Mlp::init({3, 4, 1}, Head::identity, rng);
    Mlp::Workspace ws;
    const std::vector<double> x = random_input(3, rng);
    net.forward(x, ws);
    std::vector<double> once(net.param_count(), 0.0);
    net.backward(x, ws, {1.0}, once);
    std::vector<double> twice(net.param_count(), 0.0);
    net.backward(x, ws, {1.0}, twice);
    net.backward(x, ws, {1.0}, twice);
    for (std::size_t i = 0; i < once.size(); ++i)
        CHECK(twice[i] == doctest::Approx(2.0 * once[i]));
}

TEST_CASE("Adam: zero gradient is a no-op, first step is near -lr * sign") {
    std::vector<double> params{1.0, -2.0, 3.0};
    Adam opt(params.size(), 0.01);
    opt.step(params, {0.0, 0.0, 0.0});
    CHECK(params == std::vector<double>{1.0, -2.0, 3.0});

    opt = Adam(params.size(), 0.01);
    opt.step(params, {0.5, -4.0, 1e-3});
    CHECK(params[0] == doctest::Approx(1.0 - 0.01).epsilon(1e-4));
    CHECK(params[1] == doctest::Approx(-2.0 + 0.01).epsilon(1e-4));
    CHECK(params[2] == doctest::Approx(3.0 - 0.01).epsilon(1e-3));
    CHECK(opt.steps_taken() == 1);
}

TEST_CASE("Adam drives a scalar quadratic to its minimum") {
    std::vector<double> params{5.0};
    Adam opt(1, 0.05);
    for (int k = 0; k < 2000; ++k) opt.step(params, {2.0 * (params[0] - 1.5)});
    CHECK(params[0] == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("gradient descent with Adam fits a small regression") {
    RngStream rng(31);
    Mlp net = Mlp::init({1, 16, 1}, Head::identity, rng);
    Adam opt(net.param_count(), 1e-2);
    Mlp::Workspace ws;
    std::vector<double> grad(net.param_count());
    double final_loss = 1e9;
    for (int iter = 0; iter < 1500; ++iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double loss = 0.0;
        for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
            const double target = 3.0 * x - 1.0;
            const std::vector<double>& y = net.forward({x}, ws);
            const double err = y[0] - target;
            loss += err * err;
            net.backward({x}, ws, {2.0 * err}, grad);
        }
        opt.step(net.params(), grad);
        final_loss = loss;
    }
    CHECK(final_loss < 1e-3);
}

TEST_CASE("soft_update blends parameter vectors") {
    const std::vector<double> online{1.0, 2.0, 3.0};
    std::vector<double> target{0.0, 0.0, 1.0};

    std::vector<double> t1 = target;
    soft_update(t1, online, 1.0);
    CHECK(t1 == online);

    std::vector<double> t0 = target;
    soft_update(t0, online, 0.0);
    CHECK(t0 == target);

    std::vector<double> th = target;
    soft_update(th, online, 0.5);
    CHECK(th[0] == doctest::Approx(0.5));
    CHECK(th[1] == doctest::Approx(1.0));
    CHECK(th[2] == doctest::Approx(2.0));

    RngStream rng(8);
    Mlp a = Mlp::init({2, 3, 1}, Head::identity, rng);
    Mlp b = Mlp::init({2, 3, 1}, Head::identity, rng);
    soft_update(b, a, 1.0);
    CHECK(a == b);
    Mlp c({2, 4, 1}, Head::identity);
    CHECK_THROWS_AS(soft_update(c, a, 0.5), ContractViolation);
}

TEST_CASE("checkpoints round-trip bit for bit") {
    RngStream rng(123);
    const Mlp net = Mlp::init({7, 12, 12, 3}, Head::squash, rng);
    const std::string path = temp_path("scmarl_nn_roundtrip.bin");
    net.save(path);
    const Mlp loaded = Mlp::load(path);
    CHECK(loaded == net);
    const std::vector<double> x = random_input(7, rng);
    CHECK(loaded.forward(x) == net.forward(x));
    std::filesystem::remove(path);
}

TEST_CASE("load rejects junk files") {
    const std::string path = temp_path("scmarl_nn_junk.bin");
    {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        REQUIRE(f != nullptr);
        std::fputs("not a checkpoint at all", f);
        std::fclose(f);
    }
    CHECK_THROWS((void)Mlp::load(path));
    CHECK_THROWS((void)Mlp::load(temp_path("scmarl_nn_missing.bin")));
    std::filesystem::remove(path);
}

TEST_CASE("workspace carries exactly the forward activations") {
    RngStream rng(14);
    Mlp net = Mlp::init({3, 5, 2}, Head::squash, rng);
    Mlp::Workspace ws;
    const std::vector<double> x = random_input(3, rng);
    const std::vector<double>& out = net.forward(x, ws);
    REQUIRE(ws.pre.size() == 2);
    REQUIRE(ws.post.size() == 2);
    CHECK(ws.post.back() == out);
    for (std::size_t i = 0; i < ws.pre[0].size(); ++i)
        CHECK(ws.post[0][i] == std::max(0.0, ws.pre[0][i]));
    for (std::size_t i = 0; i < ws.pre[1].size(); ++i)
        CHECK(ws.post[1][i] == doctest::Approx((std::tanh(ws.pre[1][i]) + 1.0) / 2.0));
}
