#include "ppicod/oracle.hpp"

#include "parallel.hpp"
#include "ppicod/csv.hpp"
#include "ppicod/gf2.hpp"
#include "ppicod/rref_enum.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace ppicod {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > saturated / a) {
        return saturated;
    }
    return a * b;
}

void require_columns(const FqMatrix& a, const PpicodInstance& inst) {
    if (a.cols() != inst.messages()) {
        throw std::invalid_argument("code has " + std::to_string(a.cols()) + " columns but the instance has " +
                                    std::to_string(inst.messages()) + " messages");
    }
    if (a.field() != inst.field()) {
        throw std::invalid_argument("code and instance use different fields");
    }
}

// Receiver ranks sorted by (rank, message) so the first decodable entry is the best choice.
struct RankedMessage {
    std::size_t message;
    Rational rank;
};

std::vector<std::vector<RankedMessage>> ranked_unknowns(const PpicodInstance& inst) {
    std::vector<std::vector<RankedMessage>> out(inst.receivers());
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        for (std::size_t j = 0; j < inst.messages(); ++j) {
            if (const auto& p = inst.pref(i, j); p.is_finite()) {
                out[i].push_back({j, p.value()});
            }
        }
        std::stable_sort(out[i].begin(), out[i].end(),
                         [](const RankedMessage& a, const RankedMessage& b) { return compare(a.rank, b.rank) < 0; });
    }
    return out;
}

bool fast_gf2(const PpicodInstance& inst) {
    return inst.field().order() == 2 && inst.messages() <= gf2::max_cols;
}

}  // namespace

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t limit)
    : std::runtime_error(what + ": search needs " + (required == saturated ? std::string(">= 2^64") : std::to_string(required)) +
                         " objects, budget is " + std::to_string(limit)),
      required_(required),
      limit_(limit) {}

std::vector<std::size_t> decodable_messages(const FqMatrix& a, const PpicodInstance& inst, std::size_t receiver) {
    require_columns(a, inst);
    const auto known = inst.side_info(receiver);
    const auto removed = remove_columns(a, known);
    const auto reduced = rref(removed.matrix);
    std::vector<std::size_t> out;
    for (const auto c : unit_rows(reduced)) {
        out.push_back(removed.kept[c]);
    }
    return out;
}

bool DecodabilityReport::all_satisfied() const {
    return std::all_of(receivers.begin(), receivers.end(),
                       [](const ReceiverDecodability& r) { return r.best_message.has_value(); });
}

DecodabilityReport decodability(const FqMatrix& a, const PpicodInstance& inst) {
    DecodabilityReport report;
    const auto ranked = ranked_unknowns(inst);
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        ReceiverDecodability r;
        r.decodable = decodable_messages(a, inst, i);
        for (const auto& rm : ranked[i]) {
            if (std::binary_search(r.decodable.begin(), r.decodable.end(), rm.message)) {
                r.best_message = rm.message;
                r.best_rank = rm.rank;
                break;
            }
        }
        report.receivers.push_back(std::move(r));
    }
    return report;
}

std::optional<CodeEvaluation> evaluate_code(const FqMatrix& a, const PpicodInstance& inst, LengthMode mode) {
    const auto report = decodability(a, inst);
    if (!report.all_satisfied()) {
        return std::nullopt;
    }
    CodeEvaluation eval;
    eval.point.ell = mode == LengthMode::Rank ? rank(a) : a.rows();
    eval.point.s = 0;
    for (const auto& r : report.receivers) {
        eval.point.s += *r.best_rank;
        eval.choice.push_back(*r.best_message);
    }
    eval.point.witnesses.emplace_back(a);
    return eval;
}

Rational satisfaction(const DecodingChoice& choice, const PpicodInstance& inst) {
    if (choice.size() != inst.receivers()) {
        throw std::invalid_argument("decoding choice has the wrong number of receivers");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < choice.size(); ++i) {
        if (choice[i] >= inst.messages() || inst.knows(i, choice[i])) {
            throw std::invalid_argument("receiver " + std::to_string(i + 1) + " cannot be assigned message " +
                                        std::to_string(choice[i] + 1) + " (side information or out of range)");
        }
        s += inst.pref(i, choice[i]).value();
    }
    return s;
}

std::uint64_t method2_search_size(const PpicodInstance& inst) {
    return subspace_count(inst.messages(), inst.field().order(), 1, inst.messages());
}

namespace {

struct PartialBoundary {
    ParetoFront front;
    std::set<Pair> raw;
    std::uint64_t enumerated = 0;
    std::uint64_t unsatisfied = 0;
    std::uint64_t fittings = 0;
};

BoundaryResult reduce(std::vector<PartialBoundary>& parts, std::size_t witness_limit) {
    BoundaryResult out;
    out.front = ParetoFront(witness_limit);
    std::set<Pair> raw;
    for (auto& p : parts) {
        out.front = merge(out.front, p.front);
        raw.insert(p.raw.begin(), p.raw.end());
        out.enumerated += p.enumerated;
        out.unsatisfied += p.unsatisfied;
        out.fittings += p.fittings;
    }
    out.raw.assign(raw.begin(), raw.end());
    return out;
}

void record(PartialBoundary& part, std::size_t ell, const Rational& s, const std::function<Witness()>& witness) {
    part.raw.emplace(ell, s);
    LengthSatisfactionPoint p{ell, s, {}};
    if (part.front.dominated(p)) {
        return;
    }
    p.witnesses.push_back(witness());
    part.front.insert(std::move(p));
}

}  // namespace

BoundaryResult method2_boundary(const PpicodInstance& inst, const Budgets& budgets) {
    require_valid(inst);
    const std::size_t m = inst.messages();
    const std::uint64_t size = method2_search_size(inst);
    if (size > budgets.max_matrices) {
        throw BudgetExceeded("method 2 refused", size, budgets.max_matrices);
    }
    const auto blocks = rref_blocks(m, 1, m);
    const auto ranked = ranked_unknowns(inst);
    const std::size_t threads = detail::resolve_threads(budgets.threads, blocks.size());
    std::vector<PartialBoundary> parts(threads);
    for (auto& p : parts) {
        p.front = ParetoFront(budgets.witness_limit);
    }

    if (fast_gf2(inst)) {
        std::vector<gf2::Row> known(inst.receivers(), 0);
        for (std::size_t i = 0; i < inst.receivers(); ++i) {
            for (const auto h : inst.side_info(i)) {
                known[i] |= gf2::Row{1} << h;
            }
        }
        detail::parallel_for(blocks.size(), threads, [&](std::size_t w, std::size_t b) {
            auto& part = parts[w];
            const auto& block = blocks[b];
            std::vector<gf2::Row> code(block.rank);
            std::vector<gf2::Row> scratch(block.rank);
            for_each_rref_in_block(m, inst.field(), block, [&](const FqMatrix& a) {
                ++part.enumerated;
                for (std::size_t r = 0; r < block.rank; ++r) {
                    gf2::Row bits = 0;
                    const auto row = a.row(r);
                    for (std::size_t c = 0; c < m; ++c) {
                        bits |= gf2::Row{row[c]} << c;
                    }
                    code[r] = bits;
                }
                Rational s = 0;
                for (std::size_t i = 0; i < inst.receivers(); ++i) {
                    const auto mask = gf2::decodable_mask(code, known[i], scratch);
                    const RankedMessage* best = nullptr;
                    for (const auto& rm : ranked[i]) {
                        if ((mask >> rm.message) & 1u) {
                            best = &rm;
                            break;
                        }
                    }
                    if (best == nullptr) {
                        ++part.unsatisfied;
                        return;
                    }
                    s += best->rank;
                }
                record(part, block.rank, s, [&] { return Witness(a.top_rows(block.rank)); });
            });
        });
    } else {
        detail::parallel_for(blocks.size(), threads, [&](std::size_t w, std::size_t b) {
            auto& part = parts[w];
            const auto& block = blocks[b];
            for_each_rref_in_block(m, inst.field(), block, [&](const FqMatrix& a) {
                ++part.enumerated;
                const auto code = a.top_rows(block.rank);
                Rational s = 0;
                for (std::size_t i = 0; i < inst.receivers(); ++i) {
                    const auto dec = decodable_messages(code, inst, i);
                    const RankedMessage* best = nullptr;
                    for (const auto& rm : ranked[i]) {
                        if (std::binary_search(dec.begin(), dec.end(), rm.message)) {
                            best = &rm;
                            break;
                        }
                    }
                    if (best == nullptr) {
                        ++part.unsatisfied;
                        return;
                    }
                    s += best->rank;
                }
                record(part, block.rank, s, [&] { return Witness(code); });
            });
        });
    }
    return reduce(parts, budgets.witness_limit);
}

std::uint64_t decoding_choice_count(const PpicodInstance& inst) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        total = saturating_mul(total, inst.unknown(i).size());
    }
    return total;
}

void for_each_decoding_choice(const PpicodInstance& inst,
                              const std::function<void(const DecodingChoice&, const Rational&)>& visit) {
    const std::size_t n = inst.receivers();
    std::vector<std::vector<std::size_t>> options(n);
    for (std::size_t i = 0; i < n; ++i) {
        options[i] = inst.unknown(i);
        if (options[i].empty()) {
            return;
        }
    }
    std::vector<std::size_t> pos(n, 0);
    DecodingChoice choice(n);
    while (true) {
        Rational s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            choice[i] = options[i][pos[i]];
            s += inst.pref(i, choice[i]).value();
        }
        visit(choice, s);
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++pos[k] < options[k].size()) {
                break;
            }
            pos[k] = 0;
            if (k == 0) {
                return;
            }
        }
        if (n == 0) {
            return;
        }
    }
}

std::vector<std::pair<DecodingChoice, Rational>> enumerate_decoding_choices(const PpicodInstance& inst,
                                                                            const Budgets& budgets) {
    const auto count = decoding_choice_count(inst);
    if (count > budgets.max_choices) {
        throw BudgetExceeded("decoding-choice enumeration refused", count, budgets.max_choices);
    }
    std::vector<std::pair<DecodingChoice, Rational>> out;
    out.reserve(count);
    for_each_decoding_choice(inst, [&](const DecodingChoice& d, const Rational& s) { out.emplace_back(d, s); });
    return out;
}

std::uint64_t fitting_count(const PpicodInstance& inst) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        for (std::size_t h = 0; h < inst.side_info(i).size(); ++h) {
            total = saturating_mul(total, inst.field().order());
        }
    }
    return total;
}

MinrankResult minrank(const PpicodInstance& inst, const DecodingChoice& choice, const Budgets& budgets) {
    satisfaction(choice, inst);  // validates the choice
    const auto count = fitting_count(inst);
    if (count > budgets.max_fittings) {
        throw BudgetExceeded("minrank refused", count, budgets.max_fittings);
    }
    const std::size_t n = inst.receivers();
    const std::size_t m = inst.messages();
    const auto& field = inst.field();

    FqMatrix fit(field, n, m);
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < n; ++i) {
        fit.at(i, choice[i]) = 1;
        for (const auto h : inst.side_info(i)) {
            free.emplace_back(i, h);
        }
    }

    const bool fast = fast_gf2(inst);
    std::vector<gf2::Row> bits(n);
    auto rank_of = [&](const FqMatrix& a) -> std::size_t {
        if (!fast) {
            return rank(a);
        }
        bits = gf2::pack(a);
        return gf2::rref_in_place(bits, m);
    };

    MinrankResult best{std::numeric_limits<std::size_t>::max(), FqMatrix(field, 0, m), 0};
    const Element top = field.order() - 1;
    while (true) {
        ++best.fittings;
        const auto r = rank_of(fit);
        if (r < best.ell) {
            best.ell = r;
            best.witness = row_space_basis(fit);
            if (r <= 1) {
                break;  // every fitting matrix has a nonzero row
            }
        }
        std::size_t k = free.size();
        bool done = free.empty();
        while (k > 0) {
            --k;
            auto& e = fit.at(free[k].first, free[k].second);
            if (e != top) {
                ++e;
                break;
            }
            e = 0;
            if (k == 0) {
                done = true;
            }
        }
        if (done) {
            break;
        }
    }
    return best;
}

BoundaryResult method1_boundary(const PpicodInstance& inst, const Budgets& budgets) {
    require_valid(inst);
    const auto choices = enumerate_decoding_choices(inst, budgets);
    const auto fittings = fitting_count(inst);
    if (fittings > budgets.max_fittings) {
        throw BudgetExceeded("minrank refused", fittings, budgets.max_fittings);
    }
    const std::size_t threads = detail::resolve_threads(budgets.threads, choices.size());
    std::vector<PartialBoundary> parts(threads);
    for (auto& p : parts) {
        p.front = ParetoFront(budgets.witness_limit);
    }
    detail::parallel_for(choices.size(), threads, [&](std::size_t w, std::size_t c) {
        auto& part = parts[w];
        const auto& [choice, s] = choices[c];
        const auto mr = minrank(inst, choice, budgets);
        ++part.enumerated;
        part.fittings += mr.fittings;
        record(part, mr.ell, s, [&] { return Witness(choice); });
    });
    return reduce(parts, budgets.witness_limit);
}

FqMatrix vandermonde_mds(const FieldSpec& field, std::size_t m, std::size_t k) {
    if (field.order() < m) {
        throw std::invalid_argument("an MDS Vandermonde code over GF(" + std::to_string(field.order()) +
                                    ") needs q >= m = " + std::to_string(m));
    }
    if (k > m) {
        throw std::invalid_argument("MDS dimension exceeds the message count");
    }
    FqMatrix g(field, k, m);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            g.at(r, c) = field.pow(static_cast<Element>(c), r);
        }
    }
    return g;
}

std::vector<LinearCode> ratecap_codes(const PpicodInstance& inst, const DecodingChoice& choice) {
    satisfaction(choice, inst);
    const std::size_t n = inst.receivers();
    const std::size_t m = inst.messages();
    std::vector<LinearCode> codes;

    FqMatrix uncoded(inst.field(), n, m);
    for (std::size_t i = 0; i < n; ++i) {
        uncoded.at(i, choice[i]) = 1;
    }
    codes.push_back({uncoded, choice});
    codes.push_back({FqMatrix::identity(inst.field(), m), choice});

    if (inst.field().order() >= m) {
        std::size_t min_known = m;
        for (std::size_t i = 0; i < n; ++i) {
            min_known = std::min(min_known, inst.side_info(i).size());
        }
        codes.push_back({vandermonde_mds(inst.field(), m, m - min_known), choice});
    }

    for (const auto& code : codes) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto dec = decodable_messages(code.matrix, inst, i);
            if (!std::binary_search(dec.begin(), dec.end(), choice[i])) {
                throw std::logic_error("rate-cap construction failed the decodability audit");
            }
        }
    }
    return codes;
}

std::string format_matrix_witness(const FqMatrix& a) {
    const bool digits = a.field().order() <= 10;
    std::string out;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (r != 0) {
            out += ';';
        }
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (!digits && c != 0) {
                out += ' ';
            }
            out += std::to_string(a(r, c));
        }
    }
    return out;
}

FqMatrix parse_matrix_witness(const std::string& text, const FieldSpec& field, std::size_t cols) {
    const bool digits = field.order() <= 10;
    std::vector<std::vector<Element>> rows;
    std::stringstream rows_in(text);
    std::string row_text;
    while (std::getline(rows_in, row_text, ';')) {
        std::vector<Element> row;
        if (digits) {
            for (const char ch : row_text) {
                if (ch < '0' || ch > '9') {
                    throw csv::FormatError("bad matrix witness '" + text + "'");
                }
                row.push_back(static_cast<Element>(ch - '0'));
            }
        } else {
            std::istringstream entries(row_text);
            Element e = 0;
            while (entries >> e) {
                row.push_back(e);
            }
        }
        if (row.size() != cols) {
            throw csv::FormatError("matrix witness row has " + std::to_string(row.size()) + " entries, expected " +
                                   std::to_string(cols));
        }
        rows.push_back(std::move(row));
    }
    try {
        return FqMatrix::from_rows(field, rows, cols);
    } catch (const std::invalid_argument& e) {
        throw csv::FormatError(e.what());
    }
}

namespace {

const csv::Row boundary_header{"ell", "s_num", "s_den", "witness_kind", "witness"};

}  // namespace

void write_boundary_csv(std::ostream& out, const ParetoFront& front) {
    csv::write_row(out, boundary_header);
    for (const auto& p : front.points()) {
        std::string kind;
        std::string text;
        if (!p.witnesses.empty()) {
            const auto& w = p.witnesses.front();
            if (const auto* a = std::get_if<FqMatrix>(&w)) {
                kind = "matrix";
                text = format_matrix_witness(*a);
            } else if (const auto* d = std::get_if<DecodingChoice>(&w)) {
                kind = "choice";
                for (std::size_t i = 0; i < d->size(); ++i) {
                    text += (i == 0 ? "" : ",") + std::to_string((*d)[i] + 1);
                }
            } else {
                kind = "id";
                text = std::get<std::string>(w);
            }
        }
        csv::write_row(out, {std::to_string(p.ell), std::to_string(p.s.numerator()), std::to_string(p.s.denominator()),
                             kind, text});
    }
}

ParetoFront read_boundary_csv(std::istream& in, const FieldSpec& field, std::size_t messages) {
    csv::expect_header(in, boundary_header);
    ParetoFront front;
    while (auto row = csv::read_row(in)) {
        if (row->size() != boundary_header.size()) {
            throw csv::FormatError("boundary CSV row has " + std::to_string(row->size()) + " fields");
        }
        LengthSatisfactionPoint p;
        try {
            p.ell = std::stoull((*row)[0]);
            p.s = Rational(std::stoll((*row)[1]), std::stoll((*row)[2]));
        } catch (const std::exception& e) {
            throw csv::FormatError(std::string("bad number in boundary CSV: ") + e.what());
        }
        const auto& kind = (*row)[3];
        const auto& text = (*row)[4];
        if (kind == "matrix") {
            p.witnesses.emplace_back(parse_matrix_witness(text, field, messages));
        } else if (kind == "choice") {
            DecodingChoice d;
            std::stringstream items(text);
            std::string item;
            while (std::getline(items, item, ',')) {
                const auto idx = std::stoull(item);
                if (idx == 0 || idx > messages) {
                    throw csv::FormatError("decoding choice index out of range: " + item);
                }
                d.push_back(idx - 1);
            }
            p.witnesses.emplace_back(std::move(d));
        } else if (kind == "id") {
            p.witnesses.emplace_back(text);
        } else if (!kind.empty()) {
            throw csv::FormatError("unknown witness kind '" + kind + "'");
        }
        front.insert(std::move(p));
    }
    return front;
}

ParetoFront read_front_pairs(std::istream& in) {
    const auto header = csv::read_row(in);
    if (!header || header->size() < 3 || (*header)[0] != "ell" || (*header)[1] != "s_num" || (*header)[2] != "s_den") {
        throw csv::FormatError("expected a front or boundary CSV with columns ell,s_num,s_den,...");
    }
    ParetoFront front;
    while (auto row = csv::read_row(in)) {
        if (row->size() != header->size()) {
            throw csv::FormatError("front CSV row has " + std::to_string(row->size()) + " fields");
        }
        try {
            front.insert({std::stoull((*row)[0]), Rational(std::stoll((*row)[1]), std::stoll((*row)[2])), {}});
        } catch (const csv::FormatError&) {
            throw;
        } catch (const std::exception& e) {
            throw csv::FormatError(std::string("bad number in front CSV: ") + e.what());
        }
    }
    return front;
}

FqMatrix parse_code(const std::string& text, const FieldSpec& field, std::size_t messages) {
    std::vector<std::vector<Element>> rows;
    auto check_entry = [&](long long v) {
        if (v < 0 || static_cast<unsigned long long>(v) >= field.order()) {
            throw csv::FormatError("code entry " + std::to_string(v) + " outside GF(" + std::to_string(field.order()) +
                                   ")");
        }
        return static_cast<Element>(v);
    };
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw csv::FormatError(std::string("code file is not valid JSON: ") + e.what());
        }
        if (doc.contains("q") && doc["q"] != field.order()) {
            throw csv::FormatError("code file field q=" + doc["q"].dump() + " does not match the instance");
        }
        if (!doc.contains("A") || !doc["A"].is_array()) {
            throw csv::FormatError("code file needs an \"A\" array of rows");
        }
        for (const auto& r : doc["A"]) {
            if (!r.is_array()) {
                throw csv::FormatError("each row of \"A\" must be an array");
            }
            std::vector<Element> row;
            for (const auto& v : r) {
                if (!v.is_number_integer()) {
                    throw csv::FormatError("code entries must be integers");
                }
                row.push_back(check_entry(v.get<long long>()));
            }
            rows.push_back(std::move(row));
        }
    } else {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream items(line);
            std::vector<Element> row;
            long long v = 0;
            while (items >> v) {
                row.push_back(check_entry(v));
            }
            if (!items.eof()) {
                throw csv::FormatError("non-numeric entry in code file line '" + line + "'");
            }
            if (!row.empty()) {
                rows.push_back(std::move(row));
            }
        }
    }
    for (const auto& r : rows) {
        if (r.size() != messages) {
            throw csv::FormatError("code row has " + std::to_string(r.size()) + " entries but the instance has " +
                                   std::to_string(messages) + " messages");
        }
    }
    return FqMatrix::from_rows(field, rows, messages);
}

std::string to_code_json(const FqMatrix& a) {
    std::string out = "{\"q\":" + std::to_string(a.field().order()) + ",\"A\":[";
    for (std::size_t r = 0; r < a.rows(); ++r) {
        out += r == 0 ? "[" : ",[";
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out += (c == 0 ? "" : ",") + std::to_string(a(r, c));
        }
        out += "]";
    }
    return out + "]}\n";
}

FqMatrix load_code(const std::filesystem::path& path, const FieldSpec& field, std::size_t messages) {
    std::ifstream in(path);
    if (!in) {
        throw csv::FormatError("cannot open code file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_code(text.str(), field, messages);
}

}  // namespace ppicod
