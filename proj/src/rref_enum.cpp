#include "ppicod/rref_enum.hpp"

#include <algorithm>
#include <limits>

namespace ppicod {

namespace {

void combinations(std::size_t m, std::size_t k, std::vector<std::size_t>& current, std::size_t start,
                  std::vector<RrefBlock>& out) {
    if (current.size() == k) {
        out.push_back({k, current});
        return;
    }
    for (std::size_t c = start; c + (k - current.size()) <= m; ++c) {
        current.push_back(c);
        combinations(m, k, current, c + 1, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<RrefBlock> rref_blocks(std::size_t m, std::size_t rank_min, std::size_t rank_max) {
    std::vector<RrefBlock> out;
    std::vector<std::size_t> current;
    for (std::size_t k = rank_min; k <= std::min(rank_max, m); ++k) {
        combinations(m, k, current, 0, out);
    }
    return out;
}

std::vector<std::pair<std::size_t, std::size_t>> free_positions(std::size_t m, const RrefBlock& block) {
    std::vector<bool> is_pivot(m, false);
    for (const auto p : block.pivots) {
        is_pivot[p] = true;
    }
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < block.rank; ++r) {
        for (std::size_t c = block.pivots[r] + 1; c < m; ++c) {
            if (!is_pivot[c]) {
                out.emplace_back(r, c);
            }
        }
    }
    return out;
}

std::uint64_t block_size(std::size_t m, const RrefBlock& block, std::uint64_t q) {
    const auto free = free_positions(m, block).size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free; ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / q) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= q;
    }
    return total;
}

std::vector<FqMatrix> enumerate_rref(std::size_t m, const FieldSpec& field, std::size_t rank_min,
                                     std::size_t rank_max) {
    std::vector<FqMatrix> out;
    for_each_rref(m, field, rank_min, std::min(rank_max, m), [&](const FqMatrix& a) { out.push_back(a); });
    return out;
}

}  // namespace ppicod
