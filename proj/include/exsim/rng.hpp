#pragma once

#include <cmath>
#include <cstdint>

namespace exsim {

/// splitmix64 step; used for seeding and stream derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and a stream tag
/// (agent id or reserved constant). Same inputs give the same stream on
/// every platform.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t tag) {
    std::uint64_t s = master ^ (0x9E3779B97F4A7C15ULL * (tag + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

/// Deterministic per-agent random stream (xoshiro256++ core).
///
/// The standard library engines are portable but its distributions are not;
/// all draws here are implemented in terms of the raw 64-bit output so that
/// a scenario replays identically everywhere.
class RngStream {
public:
    RngStream() : RngStream(0, 0) {}

    RngStream(std::uint64_t master_seed, std::uint64_t stream_tag) {
        std::uint64_t sm = mix_seed(master_seed, stream_tag);
        for (auto& word : state_) word = splitmix64(sm);
        has_cached_normal_ = false;
        cached_normal_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] inclusive. Uses rejection to stay unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64()); // full range
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (has_cached_normal_) {
            has_cached_normal_ = false;
            return cached_normal_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double mul = std::sqrt(-2.0 * std::log(s) / s);
        cached_normal_ = v * mul;
        has_cached_normal_ = true;
        return u * mul;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate) {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return -std::log(u) / rate;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool has_cached_normal_;
    double cached_normal_;
};

/// Reserved stream tags for non-agent randomness.
namespace stream_tag {
inline constexpr std::uint64_t kFundamental = 0xF000'0001ULL;
inline constexpr std::uint64_t kLatencyJitter = 0xF000'0002ULL;
inline constexpr std::uint64_t kPolicy = 0xF000'0003ULL;
} // namespace stream_tag

} // namespace exsim
