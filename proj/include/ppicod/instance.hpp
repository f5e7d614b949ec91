#pragma once

// Preferential pliable index coding instances.
//
// Receivers and messages are 0-based in this API. Files and printed reports
// use 1-based indices.

#include "ppicod/fq.hpp"
#include "ppicod/rank.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppicod {

/// Field size plus the n x m preference grid. An infinite entry marks a message the
/// receiver already holds (side information).
class PpicodInstance {
public:
    /// Throws std::invalid_argument if prefs.size() != n * m.
    PpicodInstance(FieldSpec field, std::size_t receivers, std::size_t messages, std::vector<Rank> prefs);

    static PpicodInstance from_rows(FieldSpec field, const std::vector<std::vector<Rank>>& rows);

    [[nodiscard]] const FieldSpec& field() const { return field_; }
    [[nodiscard]] std::size_t receivers() const { return n_; }
    [[nodiscard]] std::size_t messages() const { return m_; }

    [[nodiscard]] const Rank& pref(std::size_t receiver, std::size_t message) const {
        return prefs_[receiver * m_ + message];
    }
    [[nodiscard]] std::span<const Rank> row(std::size_t receiver) const {
        return std::span<const Rank>(prefs_).subspan(receiver * m_, m_);
    }
    [[nodiscard]] bool knows(std::size_t receiver, std::size_t message) const {
        return pref(receiver, message).is_infinite();
    }

    /// Messages known to the receiver; throws std::out_of_range for a bad index.
    [[nodiscard]] std::vector<std::size_t> side_info(std::size_t receiver) const;
    [[nodiscard]] std::vector<std::size_t> unknown(std::size_t receiver) const;

    /// Smallest / largest finite rank in the receiver's row. Precondition: a finite entry exists.
    [[nodiscard]] Rational min_rank(std::size_t receiver) const;
    [[nodiscard]] Rational max_rank(std::size_t receiver) const;

    bool operator==(const PpicodInstance&) const = default;

private:
    FieldSpec field_;
    std::size_t n_;
    std::size_t m_;
    std::vector<Rank> prefs_;
};

struct Violation {
    std::size_t receiver;  // 1-based
    std::string what;
};

/// Lists every broken invariant (a row with no finite entry, a non-positive rank).
std::vector<Violation> validate(const PpicodInstance& inst);

class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws InstanceError naming every violation.
void require_valid(const PpicodInstance& inst);

struct BipartiteEdge {
    std::size_t receiver;
    std::size_t message;
    Rational weight;

    bool operator==(const BipartiteEdge&) const = default;
};

/// Receivers on one side, messages on the other; an edge per finite preference.
struct BipartiteView {
    std::size_t receivers = 0;
    std::size_t messages = 0;
    std::vector<BipartiteEdge> edges;  // receiver-major, message ascending
};

BipartiteView to_bipartite(const PpicodInstance& inst);

/// Each receiver knows a uniformly random h-subset and ranks the rest by a
/// uniformly random permutation of 1..m-h. Requires h < m.
PpicodInstance gen_uniform(std::size_t m, std::size_t n, std::size_t h, FieldSpec field, std::uint64_t seed);

/// Two receiver groups with fixed orderings, m = 8, even n. Group 1 (first n/2
/// receivers) ranks unknown messages by ascending index; group 2 ranks them by
/// ascending (index + 3) mod 8 with 1-based indices. Side information as in gen_uniform.
PpicodInstance gen_group_biased(std::size_t m, std::size_t n, std::size_t h, FieldSpec field,
                                std::uint64_t seed);

/// Preference row of the biased generator for a given side-information set.
std::vector<Rank> group_biased_row(std::size_t m, std::span<const std::size_t> side_info, int group);

/// Instance document: {"q": 2, "P": [[2, null, "3/2"], ...]}; null is infinity.
PpicodInstance parse_instance_json(const std::string& text);
std::string to_instance_json(const PpicodInstance& inst);
PpicodInstance load_instance(const std::filesystem::path& path);
void save_instance(const PpicodInstance& inst, const std::filesystem::path& path);

/// The two-receiver, five-message example used throughout the tests and docs.
PpicodInstance example_instance();

}  // namespace ppicod
