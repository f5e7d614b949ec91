#pragma once

#include "ppicod/fq.hpp"
#include "ppicod/rank.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ppicod {

/// Message decoded by each receiver (0-based).
using DecodingChoice = std::vector<std::size_t>;

/// What produced a point: a code matrix, a decoding choice, or a free-form run id.
using Witness = std::variant<FqMatrix, DecodingChoice, std::string>;

bool witness_less(const Witness& a, const Witness& b);

struct LengthSatisfactionPoint {
    std::size_t ell = 0;
    Rational s;
    std::vector<Witness> witnesses;

    /// Compares (ell, s) only.
    [[nodiscard]] bool same_pair(const LengthSatisfactionPoint& rhs) const { return ell == rhs.ell && s == rhs.s; }
};

/// (ell1 <= ell2 and s1 <= s2) with at least one strict.
bool dominates(const LengthSatisfactionPoint& a, const LengthSatisfactionPoint& b);

using Pair = std::pair<std::size_t, Rational>;

/// Non-dominated points sorted by ell ascending (so s strictly descending).
/// Points with equal (ell, s) collapse into one, witnesses concatenated in a
/// canonical order. A nonzero witness limit keeps only the first few witnesses.
class ParetoFront {
public:
    ParetoFront() = default;
    explicit ParetoFront(std::size_t witness_limit) : witness_limit_(witness_limit) {}

    /// Returns true if the point is on the front afterwards.
    bool insert(LengthSatisfactionPoint p);

    [[nodiscard]] const std::vector<LengthSatisfactionPoint>& points() const { return points_; }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] bool empty() const { return points_.empty(); }
    [[nodiscard]] std::size_t witness_limit() const { return witness_limit_; }

    /// Smallest code length on the front; precondition: non-empty.
    [[nodiscard]] std::size_t min_length() const { return points_.front().ell; }
    /// Smallest satisfaction metric on the front; precondition: non-empty.
    [[nodiscard]] const Rational& min_satisfaction() const { return points_.back().s; }

    [[nodiscard]] std::vector<Pair> pairs() const;

    /// True if some front point dominates p.
    [[nodiscard]] bool dominated(const LengthSatisfactionPoint& p) const;

    bool operator==(const ParetoFront& rhs) const;

private:
    void add_witnesses(LengthSatisfactionPoint& into, std::vector<Witness> extra) const;

    std::vector<LengthSatisfactionPoint> points_;
    std::size_t witness_limit_ = 0;
};

ParetoFront pareto_front(std::vector<LengthSatisfactionPoint> points, std::size_t witness_limit = 0);
ParetoFront merge(const ParetoFront& a, const ParetoFront& b);

/// CSV with header `ell,s_num,s_den,witness_id`. The id is the first string witness, if any.
void write_front_csv(std::ostream& out, const ParetoFront& front);
ParetoFront read_front_csv(std::istream& in);

}  // namespace ppicod
