#include "brute.hpp"

#include "ppicod/fq.hpp"
#include "ppicod/gf2.hpp"
#include "ppicod/rref_enum.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace ppicod;

namespace {

FqMatrix random_matrix(const FieldSpec& f, std::size_t rows, std::size_t cols, std::mt19937_64& gen) {
    FqMatrix a(f, rows, cols);
    std::uniform_int_distribution<Element> d(0, f.order() - 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            a.at(r, c) = d(gen);
        }
    }
    return a;
}

FqMatrix random_invertible(const FieldSpec& f, std::size_t n, std::mt19937_64& gen) {
    while (true) {
        auto t = random_matrix(f, n, n, gen);
        if (rank(t) == n) {
            return t;
        }
    }
}

bool is_rref(const RrefResult& r) {
    const auto& a = r.rref;
    if (r.pivot_cols.size() != r.rank) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if ((i >= r.rank) != a.row_is_zero(i)) {
            return false;
        }
    }
    for (std::size_t i = 0; i < r.rank; ++i) {
        const auto p = r.pivot_cols[i];
        if (i > 0 && p <= r.pivot_cols[i - 1]) {
            return false;
        }
        for (std::size_t c = 0; c < p; ++c) {
            if (a(i, c) != 0) {
                return false;
            }
        }
        for (std::size_t k = 0; k < a.rows(); ++k) {
            if (a(k, p) != (k == i ? 1u : 0u)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

TEST_CASE("field validation and inverses") {
    CHECK_THROWS_AS(FieldSpec(4), std::invalid_argument);
    CHECK_THROWS_AS(FieldSpec(1), std::invalid_argument);
    CHECK(FieldSpec(2147483647).order() == 2147483647u);

    CHECK(field_inv(1, FieldSpec(2)) == 1);
    CHECK(field_inv(2, FieldSpec(5)) == 3);
    CHECK(field_inv(4, FieldSpec(7)) == 2);
    CHECK_THROWS_AS(field_inv(0, FieldSpec(7)), std::domain_error);

    for (const std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
        const FieldSpec f(q);
        for (Element a = 1; a < q; ++a) {
            CHECK(f.mul(a, field_inv(a, f)) == 1);
        }
    }
}

TEST_CASE("matrix entries must lie in the field") {
    CHECK_THROWS_AS(FqMatrix(FieldSpec(3), 1, 2, {0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(FqMatrix(FieldSpec(3), 1, 2, {0}), std::invalid_argument);
}

TEST_CASE("rref examples") {
    const FieldSpec f2(2);
    const auto id = FqMatrix::identity(f2, 3);
    const auto r1 = rref(id);
    CHECK(r1.rref == id);
    CHECK(r1.rank == 3);

    const auto r2 = rref(FqMatrix::from_rows(f2, {{1, 1}, {1, 1}}));
    CHECK(r2.rref == FqMatrix::from_rows(f2, {{1, 1}, {0, 0}}));
    CHECK(r2.rank == 1);
    CHECK(r2.pivot_cols == std::vector<std::size_t>{0});

    const FieldSpec f3(3);
    const auto r3 = rref(FqMatrix::from_rows(f3, {{0, 2}, {1, 1}}));
    CHECK(r3.rref == FqMatrix::identity(f3, 2));
    CHECK(r3.rank == 2);
}

TEST_CASE("remove_columns examples") {
    const FieldSpec f(5);
    const auto a = FqMatrix::from_rows(f, {{1, 2, 3, 4, 0}, {0, 1, 2, 3, 4}});
    const std::vector<std::size_t> drop{1, 3};
    const auto r = remove_columns(a, drop);
    CHECK(r.matrix == FqMatrix::from_rows(f, {{1, 3, 0}, {0, 2, 4}}));
    CHECK(r.kept == std::vector<std::size_t>{0, 2, 4});

    const auto none = remove_columns(a, std::vector<std::size_t>{});
    CHECK(none.matrix == a);

    const auto all = remove_columns(a, std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(all.matrix.cols() == 0);
    CHECK(all.matrix.rows() == 2);
    CHECK(all.kept.empty());

    CHECK_THROWS_AS(remove_columns(a, std::vector<std::size_t>{5}), std::out_of_range);
}

TEST_CASE("unit_rows examples") {
    const FieldSpec f(2);
    CHECK(unit_rows(rref(FqMatrix::from_rows(f, {{1, 0, 0}, {0, 1, 1}}))) == std::vector<std::size_t>{0});
    CHECK(unit_rows(rref(FqMatrix::identity(f, 4))) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(unit_rows(rref(FqMatrix(f, 3, 3))).empty());
}

TEST_CASE("enumerate_rref small cases") {
    const FieldSpec f(2);
    const auto m2 = enumerate_rref(2, f);
    REQUIRE(m2.size() == 4);
    CHECK(m2[0] == FqMatrix::from_rows(f, {{1, 0}, {0, 0}}));
    CHECK(m2[1] == FqMatrix::from_rows(f, {{1, 1}, {0, 0}}));
    CHECK(m2[2] == FqMatrix::from_rows(f, {{0, 1}, {0, 0}}));
    CHECK(m2[3] == FqMatrix::identity(f, 2));

    // Canonicalize every binary 2x2 matrix; the distinct row spaces are the enumeration plus {0}.
    std::set<std::vector<Element>> canon;
    for (unsigned bits = 0; bits < 16; ++bits) {
        const FqMatrix a(f, 2, 2, {bits & 1u, (bits >> 1) & 1u, (bits >> 2) & 1u, (bits >> 3) & 1u});
        const auto r = rref(a);
        const auto e = r.rref.entries();
        canon.insert({e.begin(), e.end()});
    }
    CHECK(canon.size() == 5);
    CHECK(enumerate_rref(2, f, 0, 2).size() == 5);
    for (const auto& a : m2) {
        CHECK(canon.contains({a.entries().begin(), a.entries().end()}));
    }

    std::uint64_t total = 0;
    for (const auto& [dim, count] : brute::subspace_counts(3, 2)) {
        total += count;
    }
    CHECK(total == 16);
    CHECK(enumerate_rref(3, f, 0, 3).size() == total);
}

TEST_CASE("enumeration counts match brute-force subspace counts") {
    for (const int q : {2, 3}) {
        const FieldSpec f(static_cast<std::uint32_t>(q));
        const std::size_t max_m = q == 2 ? 4 : 3;
        for (std::size_t m = 1; m <= max_m; ++m) {
            const auto counts = brute::subspace_counts(m, q);
            for (std::size_t k = 0; k <= m; ++k) {
                CAPTURE(q);
                CAPTURE(m);
                CAPTURE(k);
                CHECK(enumerate_rref(m, f, k, k).size() == counts.at(k));
                CHECK(gaussian_binomial(m, k, q) == counts.at(k));
            }
        }
    }
}

TEST_CASE("enumeration counts match the product formula up to m = 5") {
    for (const std::uint32_t q : {2u, 3u}) {
        const FieldSpec f(q);
        for (std::size_t m = 1; m <= 5; ++m) {
            for (std::size_t k = 0; k <= m; ++k) {
                std::uint64_t counted = 0;
                for_each_rref(m, f, k, k, [&](const FqMatrix&) { ++counted; });
                CHECK(counted == brute::gaussian(m, k, q));
                CHECK(gaussian_binomial(m, k, q) == brute::gaussian(m, k, q));
            }
        }
    }
}

TEST_CASE("enumeration emits distinct canonical matrices in the documented order") {
    for (const std::uint32_t q : {2u, 3u}) {
        const FieldSpec f(q);
        const std::size_t m = q == 2 ? 4 : 3;
        const auto all = enumerate_rref(m, f);
        std::set<std::vector<Element>> distinct;
        std::size_t prev_rank = 0;
        for (const auto& a : all) {
            const auto r = rref(a);
            CHECK(r.rref == a);
            CHECK(r.rank >= prev_rank);
            prev_rank = r.rank;
            distinct.insert({a.entries().begin(), a.entries().end()});
        }
        CHECK(distinct.size() == all.size());
        CHECK(all.size() == subspace_count(m, q, 1, m));
    }
    // Within a block the last free entry moves fastest.
    const FieldSpec f3(3);
    const RrefBlock block{1, {0}};
    std::vector<FqMatrix> seen;
    for_each_rref_in_block(2, f3, block, [&](const FqMatrix& a) { seen.push_back(a); });
    REQUIRE(seen.size() == 3);
    CHECK(seen[1] == FqMatrix::from_rows(f3, {{1, 1}, {0, 0}}));
    CHECK(seen[2] == FqMatrix::from_rows(f3, {{1, 2}, {0, 0}}));
}

TEST_CASE("subspace counts for m = 8, q = 2") {
    CHECK(subspace_count(8, 2, 0, 8) == 417199);
    CHECK(subspace_count(8, 2, 1, 8) == 417198);
    std::uint64_t blocks = 0;
    for (const auto& b : rref_blocks(8, 1, 8)) {
        blocks += block_size(8, b, 2);
    }
    CHECK(blocks == 417198);
}

TEST_CASE("rref properties on random matrices") {
    std::mt19937_64 gen(11);
    for (const std::uint32_t q : {2u, 3u, 5u}) {
        const FieldSpec f(q);
        for (int trial = 0; trial < 200; ++trial) {
            const auto rows = 1 + gen() % 8;
            const auto cols = 1 + gen() % 8;
            const auto a = random_matrix(f, rows, cols, gen);
            const auto r = rref(a);
            CHECK(is_rref(r));
            // Idempotence.
            CHECK(rref(r.rref).rref == r.rref);
            // Row rank equals column rank.
            CHECK(r.rank == rank(a.transpose()));
            // Same row space as the input.
            const auto stacked = FqMatrix::from_rows(f, [&] {
                std::vector<std::vector<Element>> all;
                for (std::size_t i = 0; i < a.rows(); ++i) {
                    all.emplace_back(a.row(i).begin(), a.row(i).end());
                }
                for (std::size_t i = 0; i < r.rank; ++i) {
                    all.emplace_back(r.rref.row(i).begin(), r.rref.row(i).end());
                }
                return all;
            }());
            CHECK(rank(stacked) == r.rank);

            // Row-space invariance of unit rows under an invertible transform.
            const auto t = random_invertible(f, rows, gen);
            CHECK(unit_rows(rref(t.multiply(a))) == unit_rows(r));

            // Zero padding changes neither rank nor unit rows.
            const auto padded = a.with_zero_rows(1 + gen() % 3);
            CHECK(rank(padded) == r.rank);
            CHECK(unit_rows(rref(padded)) == unit_rows(r));
        }
    }
}

TEST_CASE("GF(2) fast path matches the generic path") {
    std::mt19937_64 gen(5);
    const FieldSpec f(2);
    for (int trial = 0; trial < 500; ++trial) {
        const auto rows = 1 + gen() % 10;
        const auto cols = 1 + gen() % 64;
        const auto a = random_matrix(f, rows, cols, gen);
        auto packed = gf2::pack(a);
        const auto rk = gf2::rref_in_place(packed, cols);
        const auto generic = rref(a);
        CHECK(rk == generic.rank);
        CHECK(gf2::unpack(packed, cols) == generic.rref);

        gf2::Row mask = 0;
        for (const auto j : unit_rows(generic)) {
            mask |= gf2::Row{1} << j;
        }
        CHECK(gf2::unit_rows_mask(packed) == mask);

        // Zeroing known columns agrees with removing them.
        gf2::Row known = 0;
        std::vector<std::size_t> known_cols;
        for (std::size_t c = 0; c < cols; ++c) {
            if (gen() % 3 == 0) {
                known |= gf2::Row{1} << c;
                known_cols.push_back(c);
            }
        }
        const auto removed = remove_columns(a, known_cols);
        gf2::Row expect = 0;
        for (const auto k : unit_rows(rref(removed.matrix))) {
            expect |= gf2::Row{1} << removed.kept[k];
        }
        const auto code = gf2::pack(a);
        std::vector<gf2::Row> scratch(code.size());
        CHECK(gf2::decodable_mask(code, known, scratch) == expect);
    }
}
