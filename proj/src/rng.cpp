#include "ppicod/rng.hpp"

#include <limits>
#include <stdexcept>

namespace ppicod {

std::size_t Rng::uniform_index(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("uniform_index over an empty range");
    }
    const std::uint64_t range = n;
    // Largest multiple of range that fits; draws at or above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    while (true) {
        const std::uint64_t x = engine_();
        if (x < limit) {
            return static_cast<std::size_t>(x % range);
        }
    }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace ppicod
