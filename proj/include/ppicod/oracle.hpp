#pragma once

// Ground truth for linear codes: decodability, exact Pareto boundaries by two
// independent exhaustive searches, and the length-capping constructions.

#include "ppicod/fq.hpp"
#include "ppicod/instance.hpp"
#include "ppicod/pareto.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ppicod {

struct LinearCode {
    FqMatrix matrix;  // ell x m
    std::optional<DecodingChoice> decoding;
};

/// Messages receiver `receiver` can recover from A·X and its side information:
/// the unit rows of the RREF of A with the known columns removed.
std::vector<std::size_t> decodable_messages(const FqMatrix& a, const PpicodInstance& inst, std::size_t receiver);

struct ReceiverDecodability {
    std::vector<std::size_t> decodable;
    std::optional<std::size_t> best_message;  // rank-minimal, lowest index on ties
    std::optional<Rational> best_rank;
};

struct DecodabilityReport {
    std::vector<ReceiverDecodability> receivers;

    [[nodiscard]] bool all_satisfied() const;
};

DecodabilityReport decodability(const FqMatrix& a, const PpicodInstance& inst);

enum class LengthMode { Rank, Rows };

struct CodeEvaluation {
    LengthSatisfactionPoint point;
    DecodingChoice choice;
};

/// (ell, s) of a code with each receiver decoding its best message, or nullopt if
/// some receiver decodes nothing.
std::optional<CodeEvaluation> evaluate_code(const FqMatrix& a, const PpicodInstance& inst,
                                            LengthMode mode = LengthMode::Rank);

/// Sum of P[i][D(i)]. Throws std::invalid_argument if some D(i) is known to i.
Rational satisfaction(const DecodingChoice& choice, const PpicodInstance& inst);

struct Budgets {
    std::uint64_t max_matrices = 10'000'000;  // method 2: RREFs enumerated
    std::uint64_t max_choices = 10'000'000;   // method 1: decoding choices
    std::uint64_t max_fittings = 10'000'000;  // method 1: fitting matrices per minrank
    std::size_t threads = 1;                  // 0 = hardware concurrency
    std::size_t witness_limit = 16;           // per front point; 0 = keep all
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t limit);

    [[nodiscard]] std::uint64_t required() const { return required_; }
    [[nodiscard]] std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t required_;
    std::uint64_t limit_;
};

struct BoundaryResult {
    ParetoFront front;
    std::vector<Pair> raw;          // every distinct achievable pair seen, sorted
    std::uint64_t enumerated = 0;   // matrices (method 2) or decoding choices (method 1)
    std::uint64_t unsatisfied = 0;  // method 2: matrices leaving some receiver without a message
    std::uint64_t fittings = 0;     // method 1: fitting matrices ranked
};

/// Number of RREFs of rank 1..m that method 2 visits.
std::uint64_t method2_search_size(const PpicodInstance& inst);

/// Code-centric search over every subspace of GF(q)^m of rank >= 1.
BoundaryResult method2_boundary(const PpicodInstance& inst, const Budgets& budgets = {});

/// Product of unknown-message counts; saturating.
std::uint64_t decoding_choice_count(const PpicodInstance& inst);

/// Visits every decoding choice in lexicographic order with its satisfaction.
void for_each_decoding_choice(const PpicodInstance& inst,
                              const std::function<void(const DecodingChoice&, const Rational&)>& visit);

std::vector<std::pair<DecodingChoice, Rational>> enumerate_decoding_choices(const PpicodInstance& inst,
                                                                            const Budgets& budgets = {});

struct MinrankResult {
    std::size_t ell = 0;
    FqMatrix witness;            // RREF basis of an optimal fitting matrix's row space
    std::uint64_t fittings = 0;  // fitting matrices ranked before stopping
};

/// q^(sum |H_i|); saturating.
std::uint64_t fitting_count(const PpicodInstance& inst);

/// Minimum rank over fitting matrices: row i has 1 at D(i), free entries on H_i, zeros elsewhere.
MinrankResult minrank(const PpicodInstance& inst, const DecodingChoice& choice, const Budgets& budgets = {});

/// Decoding-centric search: minrank for every decoding choice.
BoundaryResult method1_boundary(const PpicodInstance& inst, const Budgets& budgets = {});

/// k x m Vandermonde generator G[r][c] = c^r over GF(q); any k columns are independent.
/// Throws std::invalid_argument when q < m.
FqMatrix vandermonde_mds(const FieldSpec& field, std::size_t m, std::size_t k);

/// Codes that keep satisfaction(D): uncoded demands (n rows), identity (m rows), and,
/// when q >= m, an MDS code of length m - min_i |H_i|. Each is audited before return.
std::vector<LinearCode> ratecap_codes(const PpicodInstance& inst, const DecodingChoice& choice);

/// Boundary CSV: `ell,s_num,s_den,witness_kind,witness`. Matrices are written row-major,
/// rows separated by ';' (entries as digits for q <= 10, space-separated otherwise);
/// decoding choices as comma-separated 1-based message indices.
void write_boundary_csv(std::ostream& out, const ParetoFront& front);
ParetoFront read_boundary_csv(std::istream& in, const FieldSpec& field, std::size_t messages);

/// Reads either boundary or front CSV and keeps only the (ell, s) pairs.
ParetoFront read_front_pairs(std::istream& in);

std::string format_matrix_witness(const FqMatrix& a);
FqMatrix parse_matrix_witness(const std::string& text, const FieldSpec& field, std::size_t cols);

/// Code file: JSON {"q": 2, "A": [[0,0,1,0,0], ...]} ("q" optional), or plain text with
/// one row per line, entries separated by spaces or commas, '#' starting a comment.
FqMatrix parse_code(const std::string& text, const FieldSpec& field, std::size_t messages);
std::string to_code_json(const FqMatrix& a);
FqMatrix load_code(const std::filesystem::path& path, const FieldSpec& field, std::size_t messages);

}  // namespace ppicod
