#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace fairmatch {

// Deterministic seeded PRNG (splitmix64 core). Distributions are implemented
// here rather than via <random> so that streams are identical across standard
// library implementations; reproducibility per (config, seed) is a hard
// requirement of the simulator.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound), Lemire's multiply-shift reduction.
    std::uint64_t uniform_u64(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Inclusive integer range [lo, hi].
    std::int64_t uniform_nanos(std::int64_t lo, std::int64_t hi) {
        if (hi <= lo) return lo;
        return lo + static_cast<std::int64_t>(uniform_u64(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // [0, 1) with 53 bits of precision.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double normal(double mean, double stddev) {
        double u1 = uniform_real();
        const double u2 = uniform_real();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    // Rejection-sampled; falls back to clamping if the window is pathological.
    double truncated_normal(double mean, double stddev, double lo, double hi) {
        for (int attempt = 0; attempt < 1024; ++attempt) {
            const double x = normal(mean, stddev);
            if (x >= lo && x <= hi) return x;
        }
        return mean < lo ? lo : hi;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_u64(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child seed for a named substream.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        Rng r(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
        r.next_u64();
        return r.next_u64();
    }

private:
    std::uint64_t state_;
};

}  // namespace fairmatch
