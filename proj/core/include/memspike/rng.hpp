#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace memspike::rng {

// splitmix64; used to mix seed-path components into engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// A seeded random stream with portable distributions. The standard library's
// distribution objects are implementation-defined, so every draw here is
// spelled out explicitly: two builds of this code produce identical sequences.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [lo, hi], inclusive; rejection sampling keeps it unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto range = static_cast<std::uint64_t>(hi - lo) + 1u;
        if (range == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit span
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return lo + static_cast<std::int64_t>(x % range);
    }

    // Standard normal via Box-Muller (cosine branch only, so the draw count
    // per call is fixed at two).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 engine_;
};

// Roles keep logically distinct streams from colliding even when the rest of
// the derivation path matches.
enum class Role : std::uint64_t {
    InitGenome = 1,
    Select = 2,
    Mutate = 3,
    Trial = 4,
    Probe = 5,
};

// Stateless stream derivation: a stream is fully determined by
// (master seed, repeat, role, generation, index). Checkpoint/resume and any
// degree of parallelism therefore reproduce identical draws.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t repeat, Role role,
                                    std::uint64_t generation, std::uint64_t index) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ repeat);
    h = splitmix64(h ^ static_cast<std::uint64_t>(role));
    h = splitmix64(h ^ generation);
    h = splitmix64(h ^ index);
    return h;
}

inline Stream derive_stream(std::uint64_t master, std::uint64_t repeat, Role role,
                            std::uint64_t generation, std::uint64_t index) {
    return Stream(derive_seed(master, repeat, role, generation, index));
}

}  // namespace memspike::rng
