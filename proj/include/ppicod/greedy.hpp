#pragma once

// Preference-aware greedy cover. Each outer iteration grows a message set S one
// message at a time, always taking a uniformly random maximizer of the fitness
// and stopping when no addition strictly improves it. The receivers S satisfies
// are removed together with their edges; S becomes the code row sum_{j in S} X_j.

#include "ppicod/instance.hpp"
#include "ppicod/oracle.hpp"
#include "ppicod/pareto.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppicod {

struct GreedyParams {
    Rational alpha;            // in [0, 1]
    std::vector<Rational> eta;  // per receiver, positive
    std::uint64_t seed = 0;
};

/// Per-receiver threshold specification: a scalar broadcast ("3"), an explicit list
/// ("1,2,3/2"), "min" (row minimum) or "rowmax" (row maximum).
class EtaSpec {
public:
    static EtaSpec parse(const std::string& text);

    [[nodiscard]] std::vector<Rational> resolve(const PpicodInstance& inst) const;
    [[nodiscard]] const std::string& text() const { return text_; }

private:
    enum class Kind { Scalar, List, Min, RowMax };

    Kind kind_ = Kind::Scalar;
    std::vector<Rational> values_;
    std::string text_;
};

/// Thrown when some receiver has no edge within its threshold; the outer loop could never finish.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(std::size_t receiver, const std::string& what);

    /// 0-based receiver index.
    [[nodiscard]] std::size_t receiver() const { return receiver_; }

private:
    std::size_t receiver_;
};

/// Edges of the preference graph that are still present. Pruning removes every edge
/// of a receiver at once.
class LiveEdges {
public:
    explicit LiveEdges(const PpicodInstance& inst);

    [[nodiscard]] bool live(std::size_t receiver, std::size_t message) const {
        return live_[receiver * m_ + message] != 0;
    }
    [[nodiscard]] bool receiver_live(std::size_t receiver) const { return receiver_live_[receiver] != 0; }
    void prune_receiver(std::size_t receiver);

private:
    std::size_t m_;
    std::vector<char> live_;
    std::vector<char> receiver_live_;
};

struct SatisfiedReceiver {
    std::size_t receiver;
    std::size_t witness;  // the single message of S this receiver lacks
    Rational rank;

    bool operator==(const SatisfiedReceiver&) const = default;
};

struct SubcodeSelection {
    std::vector<std::size_t> messages;  // S, ascending
    std::vector<SatisfiedReceiver> satisfied;
    Rational fitness;

    bool operator==(const SubcodeSelection&) const = default;
};

struct GreedyResult {
    std::vector<SubcodeSelection> subcodes;
    LinearCode code;
    LengthSatisfactionPoint point;
    DecodingChoice decoding;
    std::size_t iterations = 0;  // outer-loop iterations
    std::size_t additions = 0;   // inner-loop growth steps over all iterations
};

/// Receivers with exactly one live edge into S whose weight is within their threshold.
std::vector<SatisfiedReceiver> satisfied_set(const PpicodInstance& inst, const std::vector<std::size_t>& subset,
                                             const LiveEdges& live, const std::vector<Rational>& eta);

/// -(eta_max + 1) if nobody is satisfied, else alpha |W| - (1 - alpha) M / |W|.
Rational fitness(const PpicodInstance& inst, const std::vector<std::size_t>& subset, const LiveEdges& live,
                 const GreedyParams& params);

GreedyResult prgrcov(const PpicodInstance& inst, const GreedyParams& params);

/// alpha = 1 with each threshold at the receiver's largest finite rank.
GreedyResult grcov(const PpicodInstance& inst, std::uint64_t seed);

/// Keeps a basis of the code's row space and lets every receiver take its best decodable message.
GreedyResult postprocess(const GreedyResult& result, const PpicodInstance& inst);

/// True if every receiver can decode its assigned message from the code.
bool audit(const GreedyResult& result, const PpicodInstance& inst);

}  // namespace ppicod
