#include <doctest.h>

#include <cmath>
#include <set>

#include "scmarl/rng.hpp"

using scmarl::RngStream;

TEST_CASE("substreams are deterministic functions of seed, name and index") {
    RngStream a = RngStream::substream(42, "demand", 0);
    RngStream b = RngStream::substream(42, "demand", 0);
    CHECK(a == b);
    for (int i = 0; i < 100; ++i) CHECK(a.uniform01() == b.uniform01());
    CHECK(a == b);
}

TEST_CASE("distinct names and indices give distinct streams") {
    RngStream base = RngStream::substream(7, "demand", 0);
    RngStream other_index = RngStream::substream(7, "demand", 1);
    RngStream other_name = RngStream::substream(7, "forecast", 0);
    RngStream other_seed = RngStream::substream(8, "demand", 0);
    CHECK(base.uniform01() != other_index.uniform01());
    CHECK(base.uniform01() != other_name.uniform01());
    CHECK(base.uniform01() != other_seed.uniform01());
}

TEST_CASE("uniform01 lies in [0,1)") {
    RngStream rng = RngStream::substream(1, "u", 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_int is inclusive on both ends and in range") {
    RngStream rng = RngStream::substream(2, "i", 0);
    std::set<int> seen;
    for (int i = 0; i < 2000; ++i) {
        const int v = rng.uniform_int(3, 7);
        CHECK(v >= 3);
        CHECK(v <= 7);
        seen.insert(v);
    }
    CHECK(seen.count(3) == 1);
    CHECK(seen.count(7) == 1);
    CHECK(rng.uniform_int(5, 5) == 5);
}

TEST_CASE("normal has roughly the requested moments") {
    RngStream rng = RngStream::substream(3, "n", 0);
    const int n = 20000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(10.0, 3.0);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(mean == doctest::Approx(10.0).epsilon(0.01));
    CHECK(std::sqrt(var) == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("copies evolve independently") {
    RngStream a = RngStream::substream(9, "c", 0);
    RngStream b = a;
    const double x = a.uniform01();
    CHECK(a != b);
    CHECK(b.uniform01() == x);
    CHECK(a == b);
}
