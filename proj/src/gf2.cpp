#include "ppicod/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace ppicod::gf2 {

std::size_t rref_in_place(std::span<Row> rows, std::size_t cols) {
    std::size_t rank = 0;
    const std::size_t n = rows.size();
    for (std::size_t c = 0; c < cols && rank < n; ++c) {
        const Row bit = Row{1} << c;
        std::size_t pivot = rank;
        while (pivot < n && (rows[pivot] & bit) == 0) {
            ++pivot;
        }
        if (pivot == n) {
            continue;
        }
        std::swap(rows[pivot], rows[rank]);
        const Row p = rows[rank];
        for (std::size_t r = 0; r < n; ++r) {
            if (r != rank && (rows[r] & bit) != 0) {
                rows[r] ^= p;
            }
        }
        ++rank;
    }
    return rank;
}

Row unit_rows_mask(std::span<const Row> rref_rows) {
    Row mask = 0;
    for (const auto r : rref_rows) {
        if (std::has_single_bit(r)) {
            mask |= r;
        }
    }
    return mask;
}

std::vector<Row> pack(const FqMatrix& m) {
    if (m.field().order() != 2 || m.cols() > max_cols) {
        throw std::invalid_argument("gf2::pack needs a binary matrix with at most 64 columns");
    }
    std::vector<Row> rows(m.rows(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m(r, c) != 0) {
                rows[r] |= Row{1} << c;
            }
        }
    }
    return rows;
}

FqMatrix unpack(std::span<const Row> rows, std::size_t cols) {
    FqMatrix m(FieldSpec(2), rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.at(r, c) = static_cast<Element>((rows[r] >> c) & 1u);
        }
    }
    return m;
}

Row decodable_mask(std::span<const Row> code, Row known, std::span<Row> scratch) {
    const Row keep = ~known;
    Row used = 0;
    for (std::size_t r = 0; r < code.size(); ++r) {
        scratch[r] = code[r] & keep;
        used |= scratch[r];
    }
    auto work = scratch.first(code.size());
    const auto rank = rref_in_place(work, static_cast<std::size_t>(std::bit_width(used)));
    return unit_rows_mask(work.first(rank));
}

}  // namespace ppicod::gf2
