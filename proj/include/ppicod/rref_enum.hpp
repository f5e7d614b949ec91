#pragma once

// Enumeration of reduced row echelon forms, i.e. of subspaces of GF(q)^m.
//
// Emission order: rank ascending, then pivot-column set in lexicographic order,
// then the free entries read row-major as a base-q counter whose last entry is
// the least significant digit. Each (rank, pivot set) pair is a block that can
// be replayed on its own, so workers can split the search by block.

#include "ppicod/fq.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace ppicod {

struct RrefBlock {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // ascending, 0-based

    bool operator==(const RrefBlock&) const = default;
};

/// All blocks with rank in [rank_min, rank_max], in emission order.
std::vector<RrefBlock> rref_blocks(std::size_t m, std::size_t rank_min, std::size_t rank_max);

/// Positions (row, col) of the free entries of a block, row-major.
std::vector<std::pair<std::size_t, std::size_t>> free_positions(std::size_t m, const RrefBlock& block);

/// Number of matrices in a block, q^(free entries); saturating.
std::uint64_t block_size(std::size_t m, const RrefBlock& block, std::uint64_t q);

/// Visits every m x m RREF of the block. The matrix passed to the visitor is reused
/// between calls; copy it to keep it.
template <class Visitor>
void for_each_rref_in_block(std::size_t m, const FieldSpec& field, const RrefBlock& block, Visitor&& visit) {
    FqMatrix a(field, m, m);
    for (std::size_t r = 0; r < block.rank; ++r) {
        a.at(r, block.pivots[r]) = 1;
    }
    const auto free = free_positions(m, block);
    const Element top = field.order() - 1;
    while (true) {
        visit(static_cast<const FqMatrix&>(a));
        std::size_t k = free.size();
        while (k > 0) {
            --k;
            auto& e = a.at(free[k].first, free[k].second);
            if (e != top) {
                ++e;
                break;
            }
            e = 0;
            if (k == 0) {
                return;
            }
        }
        if (free.empty()) {
            return;
        }
    }
}

template <class Visitor>
void for_each_rref(std::size_t m, const FieldSpec& field, std::size_t rank_min, std::size_t rank_max,
                   Visitor&& visit) {
    for (const auto& block : rref_blocks(m, rank_min, rank_max)) {
        for_each_rref_in_block(m, field, block, visit);
    }
}

/// Materialized enumeration; only for small m.
std::vector<FqMatrix> enumerate_rref(std::size_t m, const FieldSpec& field, std::size_t rank_min = 1,
                                     std::size_t rank_max = static_cast<std::size_t>(-1));

}  // namespace ppicod
