#pragma once

// Bit-packed GF(2) kernels. A row is a 64-bit word; bit j is column j.
// Results are bit-identical to the generic FqMatrix routines at q = 2.

#include "ppicod/fq.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ppicod::gf2 {

using Row = std::uint64_t;

inline constexpr std::size_t max_cols = 64;

/// Reduces rows in place to canonical RREF (zero rows last). Returns the rank.
std::size_t rref_in_place(std::span<Row> rows, std::size_t cols);

/// Bitmask of columns j for which some RREF row is exactly e_j.
Row unit_rows_mask(std::span<const Row> rref_rows);

/// Requires m.field().order() == 2 and m.cols() <= max_cols.
std::vector<Row> pack(const FqMatrix& m);
FqMatrix unpack(std::span<const Row> rows, std::size_t cols);

/// Decodable-column mask for a receiver knowing `known` columns: the unit rows of the
/// RREF of `code` with the known columns zeroed out. Equivalent to removing them.
Row decodable_mask(std::span<const Row> code, Row known, std::span<Row> scratch);

}  // namespace ppicod::gf2
