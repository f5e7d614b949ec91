#include "ppicod/fq.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace ppicod {

bool is_prime(std::uint64_t value) {
    if (value < 2) {
        return false;
    }
    if (value < 4) {
        return true;
    }
    if (value % 2 == 0) {
        return false;
    }
    for (std::uint64_t d = 3; d * d <= value; d += 2) {
        if (value % d == 0) {
            return false;
        }
    }
    return true;
}

FieldSpec::FieldSpec(std::uint32_t q) : q_(q) {
    if (q > max_order || !is_prime(q)) {
        throw std::invalid_argument("field order " + std::to_string(q) + " is not a supported prime");
    }
}

Element FieldSpec::reduce(std::int64_t value) const {
    const auto q = static_cast<std::int64_t>(q_);
    auto r = value % q;
    if (r < 0) {
        r += q;
    }
    return static_cast<Element>(r);
}

Element FieldSpec::pow(Element base, std::uint64_t exp) const {
    Element result = 1 % q_;
    Element b = base % q_;
    while (exp != 0) {
        if (exp & 1u) {
            result = mul(result, b);
        }
        b = mul(b, b);
        exp >>= 1u;
    }
    return result;
}

Element field_inv(Element a, const FieldSpec& field) {
    a %= field.order();
    if (a == 0) {
        throw std::domain_error("zero has no multiplicative inverse");
    }
    // Fermat: a^(q-2)
    return field.pow(a, field.order() - 2);
}

FqMatrix::FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FqMatrix::FqMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("matrix entry count does not match its shape");
    }
    for (const auto e : entries_) {
        if (e >= field_.order()) {
            throw std::invalid_argument("matrix entry " + std::to_string(e) + " outside GF(" +
                                        std::to_string(field_.order()) + ")");
        }
    }
}

FqMatrix FqMatrix::from_rows(FieldSpec field, const std::vector<std::vector<Element>>& rows,
                             std::size_t cols_if_empty) {
    const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    std::vector<Element> entries;
    entries.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw std::invalid_argument("ragged matrix rows");
        }
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return {field, rows.size(), cols, std::move(entries)};
}

FqMatrix FqMatrix::identity(FieldSpec field, std::size_t n) {
    FqMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1;
    }
    return m;
}

bool FqMatrix::row_is_zero(std::size_t r) const {
    const auto rw = row(r);
    return std::all_of(rw.begin(), rw.end(), [](Element e) { return e == 0; });
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t.at(c, r) = (*this)(r, c);
        }
    }
    return t;
}

FqMatrix FqMatrix::multiply(const FqMatrix& rhs) const {
    if (cols_ != rhs.rows_ || field_ != rhs.field_) {
        throw std::invalid_argument("matrix product shape or field mismatch");
    }
    FqMatrix out(field_, rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Element a = (*this)(r, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t c = 0; c < rhs.cols_; ++c) {
                out.at(r, c) = field_.add(out(r, c), field_.mul(a, rhs(k, c)));
            }
        }
    }
    return out;
}

FqMatrix FqMatrix::top_rows(std::size_t count) const {
    count = std::min(count, rows_);
    return {field_, count, cols_,
            std::vector<Element>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(count * cols_))};
}

FqMatrix FqMatrix::with_zero_rows(std::size_t count) const {
    auto entries = entries_;
    entries.resize(entries.size() + count * cols_, 0);
    return {field_, rows_ + count, cols_, std::move(entries)};
}

void FqMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(entries_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
}

std::strong_ordering FqMatrix::operator<=>(const FqMatrix& rhs) const {
    if (auto c = rows_ <=> rhs.rows_; c != 0) {
        return c;
    }
    if (auto c = cols_ <=> rhs.cols_; c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(entries_.begin(), entries_.end(), rhs.entries_.begin(),
                                                  rhs.entries_.end());
}

RrefResult rref(const FqMatrix& m) {
    RrefResult out{m, 0, {}};
    auto& a = out.rref;
    const auto& f = m.field();
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();

    for (std::size_t c = 0; c < cols && out.rank < rows; ++c) {
        std::size_t pivot = out.rank;
        while (pivot < rows && a(pivot, c) == 0) {
            ++pivot;
        }
        if (pivot == rows) {
            continue;
        }
        a.swap_rows(pivot, out.rank);
        const Element scale = field_inv(a(out.rank, c), f);
        for (std::size_t k = c; k < cols; ++k) {
            a.at(out.rank, k) = f.mul(a(out.rank, k), scale);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            const Element factor = a(r, c);
            if (r == out.rank || factor == 0) {
                continue;
            }
            for (std::size_t k = c; k < cols; ++k) {
                a.at(r, k) = f.sub(a(r, k), f.mul(factor, a(out.rank, k)));
            }
        }
        out.pivot_cols.push_back(c);
        ++out.rank;
    }
    return out;
}

std::size_t rank(const FqMatrix& m) { return rref(m).rank; }

FqMatrix row_space_basis(const FqMatrix& m) {
    auto r = rref(m);
    return r.rref.top_rows(r.rank);
}

ColumnRemoval remove_columns(const FqMatrix& m, std::span<const std::size_t> cols) {
    std::vector<bool> drop(m.cols(), false);
    for (const auto c : cols) {
        if (c >= m.cols()) {
            throw std::out_of_range("column index " + std::to_string(c) + " out of range");
        }
        drop[c] = true;
    }
    ColumnRemoval out{FqMatrix(m.field(), 0, 0), {}};
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!drop[c]) {
            out.kept.push_back(c);
        }
    }
    std::vector<Element> entries;
    entries.reserve(m.rows() * out.kept.size());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (const auto c : out.kept) {
            entries.push_back(m(r, c));
        }
    }
    out.matrix = FqMatrix(m.field(), m.rows(), out.kept.size(), std::move(entries));
    return out;
}

std::vector<std::size_t> unit_rows(const RrefResult& r) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r.rank; ++i) {
        const auto row = r.rref.row(i);
        const auto nonzero = std::count_if(row.begin(), row.end(), [](Element e) { return e != 0; });
        if (nonzero == 1) {
            out.push_back(r.pivot_cols[i]);
        }
    }
    return out;
}

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

}  // namespace

std::uint64_t gaussian_binomial(std::size_t m, std::size_t k, std::uint64_t q) {
    if (k > m) {
        return 0;
    }
    // Recurrence [m,k] = [m-1,k-1] + q^k [m-1,k], computed with 128-bit saturation.
    __extension__ using wide = unsigned __int128;
    std::vector<wide> row(k + 1, 0);
    row[0] = 1;
    const wide cap = saturated;
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = std::min(i, k); j >= 1; --j) {
            wide qj = 1;
            for (std::size_t t = 0; t < j && qj <= cap; ++t) {
                qj *= q;
            }
            wide term = row[j] == 0 ? 0 : (qj > cap ? cap : qj * row[j]);
            if (term > cap) {
                term = cap;
            }
            wide next = row[j - 1] + term;
            row[j] = next > cap ? cap : next;
        }
    }
    return static_cast<std::uint64_t>(row[k]);
}

std::uint64_t subspace_count(std::size_t m, std::uint64_t q, std::size_t rank_min, std::size_t rank_max) {
    std::uint64_t total = 0;
    for (std::size_t k = rank_min; k <= std::min(rank_max, m); ++k) {
        const auto g = gaussian_binomial(m, k, q);
        total = (saturated - total < g) ? saturated : total + g;
    }
    return total;
}

}  // namespace ppicod
