#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ppicod {

using Element = std::uint32_t;

/// Deterministic primality test (trial division; field sizes are small).
bool is_prime(std::uint64_t value);

/// A prime field GF(q). Prime powers are not supported.
class FieldSpec {
public:
    /// Largest accepted order; keeps products of two elements inside 64 bits.
    static constexpr std::uint32_t max_order = (1u << 31) - 1;

    explicit FieldSpec(std::uint32_t q);

    [[nodiscard]] std::uint32_t order() const { return q_; }

    [[nodiscard]] Element add(Element a, Element b) const {
        const std::uint64_t s = std::uint64_t{a} + b;
        return static_cast<Element>(s >= q_ ? s - q_ : s);
    }
    [[nodiscard]] Element sub(Element a, Element b) const {
        return a >= b ? a - b : static_cast<Element>(std::uint64_t{a} + q_ - b);
    }
    [[nodiscard]] Element neg(Element a) const { return a == 0 ? 0 : q_ - a; }
    [[nodiscard]] Element mul(Element a, Element b) const {
        return static_cast<Element>((std::uint64_t{a} * b) % q_);
    }
    [[nodiscard]] Element reduce(std::int64_t value) const;
    [[nodiscard]] Element pow(Element base, std::uint64_t exp) const;

    bool operator==(const FieldSpec&) const = default;

private:
    std::uint32_t q_;
};

/// Multiplicative inverse; throws std::domain_error for zero.
Element field_inv(Element a, const FieldSpec& field);

/// Dense row-major matrix over GF(q). Entries are always reduced.
class FqMatrix {
public:
    /// Empty 0 x 0 matrix over GF(2).
    FqMatrix() : FqMatrix(FieldSpec(2), 0, 0) {}
    FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols);
    FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Element> entries);

    static FqMatrix from_rows(FieldSpec field, const std::vector<std::vector<Element>>& rows,
                              std::size_t cols_if_empty = 0);
    static FqMatrix identity(FieldSpec field, std::size_t n);

    [[nodiscard]] const FieldSpec& field() const { return field_; }
    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] std::span<const Element> entries() const { return entries_; }

    [[nodiscard]] Element operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Element& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    [[nodiscard]] std::span<const Element> row(std::size_t r) const {
        return std::span<const Element>(entries_).subspan(r * cols_, cols_);
    }
    std::span<Element> row(std::size_t r) { return std::span<Element>(entries_).subspan(r * cols_, cols_); }

    [[nodiscard]] bool row_is_zero(std::size_t r) const;
    [[nodiscard]] FqMatrix transpose() const;
    [[nodiscard]] FqMatrix multiply(const FqMatrix& rhs) const;
    /// Copy of the first `count` rows.
    [[nodiscard]] FqMatrix top_rows(std::size_t count) const;
    /// Copy with `count` all-zero rows appended.
    [[nodiscard]] FqMatrix with_zero_rows(std::size_t count) const;

    void swap_rows(std::size_t a, std::size_t b);

    bool operator==(const FqMatrix&) const = default;
    /// Orders by shape, then entries lexicographically. Field is assumed equal.
    std::strong_ordering operator<=>(const FqMatrix& rhs) const;

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Element> entries_;
};

struct RrefResult {
    FqMatrix rref;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form. Zero rows end up at the bottom; pivots are 1.
RrefResult rref(const FqMatrix& m);

std::size_t rank(const FqMatrix& m);

/// Nonzero rows of the RREF, i.e. the canonical basis of the row space.
FqMatrix row_space_basis(const FqMatrix& m);

struct ColumnRemoval {
    FqMatrix matrix;
    /// kept[k] is the original index of column k of `matrix`.
    std::vector<std::size_t> kept;
};

/// Drops the given columns (0-based), keeping the rest in order.
/// Throws std::out_of_range for an index >= m.cols().
ColumnRemoval remove_columns(const FqMatrix& m, std::span<const std::size_t> cols);

/// Column indices j such that some row of the RREF is the j-th unit vector, ascending.
std::vector<std::size_t> unit_rows(const RrefResult& r);

/// Number of k-dimensional subspaces of GF(q)^m; saturates at UINT64_MAX.
std::uint64_t gaussian_binomial(std::size_t m, std::size_t k, std::uint64_t q);

/// Sum of gaussian_binomial(m, k, q) for k in [rank_min, rank_max]; saturating.
std::uint64_t subspace_count(std::size_t m, std::uint64_t q, std::size_t rank_min, std::size_t rank_max);

}  // namespace ppicod
