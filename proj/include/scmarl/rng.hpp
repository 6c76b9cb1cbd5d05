#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace scmarl {

// Deterministic random stream. All distribution code is written out here
// instead of using <random> distributions, whose output is
// implementation-defined; every draw below is reproducible bit-for-bit
// from the seed on any conforming standard library.
class RngStream {
public:
    RngStream() : engine_(0) {}
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Child stream with its own independent state, derived from (seed, name,
    // index). Streams with distinct names or indices never overlap in practice.
    static RngStream substream(std::uint64_t seed, std::string_view name,
                               std::uint64_t index = 0) {
        return RngStream(substream_seed(seed, name, index));
    }

    static std::uint64_t substream_seed(std::uint64_t seed, std::string_view name,
                                        std::uint64_t index = 0) {
        std::uint64_t h = fnv1a(name);
        h = mix(h + 0x9e3779b97f4a7c15ull * (index + 1));
        return mix(seed ^ h);
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [lo, hi], inclusive, bias-free by rejection.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = (~std::uint64_t{0} / span) * span;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return lo + static_cast<int>(x % span);
    }

    // Box-Muller transform, one value per call (no cached second value,
    // so copies of the stream stay in lockstep with the original).
    double normal(double mean, double stddev) {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    bool operator==(const RngStream&) const = default;

private:
    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (const char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return h;
    }

    // splitmix64 finalizer
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace scmarl
