#pragma once

#include <cmath>
#include <cstdint>
#include <vector>
#include <random>

namespace qmux {

/// Deterministic random source. All randomness in the toolkit flows through
/// this class so that runs reproduce bit-for-bit across platforms: the
/// mt19937_64 sequence is fixed by the standard, and the distributions are
/// hand-rolled because the standard library ones are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) {
            return 0;
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next();
        while (x >= limit) {
            x = next();
        }
        return x % n;
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Exponential variate with the given rate (inverse mean).
    double exponential(double rate) {
        double u = uniform();
        while (u <= 0.0) {
            u = uniform();
        }
        return -std::log(u) / rate;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[bounded(i)]);
        }
    }

    /// Independent sub-stream seed for (seed, stream, index) tuples, so that
    /// parallel work items draw from uncorrelated sequences regardless of
    /// scheduling order. SplitMix64 finalizer over the combined words.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) {
        auto mix = [](std::uint64_t z) {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        return mix(mix(mix(seed) ^ stream) ^ index);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace qmux
