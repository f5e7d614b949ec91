#pragma once

// Reproducible randomness. The engine is std::mt19937_64, whose output sequence is
// fixed by the C++ standard; the distributions below are implemented here rather
// than taken from <random>, whose distributions differ between standard libraries.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace ppicod {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n) by rejection sampling. Consumes at least one draw, even for n == 1.
    std::size_t uniform_index(std::size_t n);

    /// Fisher-Yates, swapping position i with a uniform index in [0, i].
    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = uniform_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer over (base, stream): independent child seeds for sweeps.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace ppicod
