#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ctxbench {

// Seeded generator used for every random decision in the project.
// std::mt19937_64 is fully specified by the standard, but the standard
// distributions are not, so uniform/normal are derived here by hand to keep
// outputs bit-identical across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in [0, n). n must be > 0.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Widening multiply keeps the draw unbiased enough for index use
        // (bias < 2^-53) while staying deterministic.
        double u = uniform01();
        auto idx = static_cast<std::uint64_t>(u * static_cast<double>(n));
        return idx >= n ? n - 1 : idx;
    }

    // Box-Muller without the cached spare: one normal per call, so the
    // call sequence alone determines the output stream.
    double normal(double mean = 0.0, double sigma = 1.0) {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
    }

    // In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent child stream; used when sub-tasks (per-class SMOTE,
    // per-cell bench seeds) need their own generators.
    Rng child(std::uint64_t stream_id) const {
        return Rng(mix(seed_, stream_id));
    }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        // splitmix64 finalizer over the combined value.
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

}  // namespace ctxbench
