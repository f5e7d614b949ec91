#include "ppicod/instance.hpp"

#include "ppicod/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ppicod {

using nlohmann::json;

PpicodInstance::PpicodInstance(FieldSpec field, std::size_t receivers, std::size_t messages,
                               std::vector<Rank> prefs)
    : field_(field), n_(receivers), m_(messages), prefs_(std::move(prefs)) {
    if (prefs_.size() != n_ * m_) {
        throw std::invalid_argument("preference grid size does not match n x m");
    }
}

PpicodInstance PpicodInstance::from_rows(FieldSpec field, const std::vector<std::vector<Rank>>& rows) {
    const std::size_t m = rows.empty() ? 0 : rows.front().size();
    std::vector<Rank> prefs;
    prefs.reserve(rows.size() * m);
    for (const auto& r : rows) {
        if (r.size() != m) {
            throw std::invalid_argument("preference rows have different lengths");
        }
        prefs.insert(prefs.end(), r.begin(), r.end());
    }
    return {field, rows.size(), m, std::move(prefs)};
}

std::vector<std::size_t> PpicodInstance::side_info(std::size_t receiver) const {
    if (receiver >= n_) {
        throw std::out_of_range("receiver index " + std::to_string(receiver) + " out of range");
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < m_; ++j) {
        if (knows(receiver, j)) {
            out.push_back(j);
        }
    }
    return out;
}

std::vector<std::size_t> PpicodInstance::unknown(std::size_t receiver) const {
    if (receiver >= n_) {
        throw std::out_of_range("receiver index " + std::to_string(receiver) + " out of range");
    }
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < m_; ++j) {
        if (!knows(receiver, j)) {
            out.push_back(j);
        }
    }
    return out;
}

Rational PpicodInstance::min_rank(std::size_t receiver) const {
    const auto r = row(receiver);
    return std::min_element(r.begin(), r.end())->value();
}

Rational PpicodInstance::max_rank(std::size_t receiver) const {
    std::optional<Rational> best;
    for (const auto& p : row(receiver)) {
        if (p.is_finite() && (!best || compare(p.value(), *best) > 0)) {
            best = p.value();
        }
    }
    return best.value();
}

std::vector<Violation> validate(const PpicodInstance& inst) {
    std::vector<Violation> out;
    if (inst.messages() == 0) {
        out.push_back({0, "instance has no messages"});
    }
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        bool any_finite = false;
        for (std::size_t j = 0; j < inst.messages(); ++j) {
            const auto& p = inst.pref(i, j);
            if (p.is_infinite()) {
                continue;
            }
            any_finite = true;
            if (p.value() <= 0) {
                out.push_back({i + 1, "non-positive rank at message " + std::to_string(j + 1)});
            }
        }
        if (!any_finite && inst.messages() > 0) {
            out.push_back({i + 1, "H_i = [1:m] (receiver already knows every message)"});
        }
    }
    return out;
}

void require_valid(const PpicodInstance& inst) {
    const auto violations = validate(inst);
    if (violations.empty()) {
        return;
    }
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& v : violations) {
        msg << "\n  receiver " << v.receiver << ": " << v.what;
    }
    throw InstanceError(msg.str());
}

BipartiteView to_bipartite(const PpicodInstance& inst) {
    BipartiteView g{inst.receivers(), inst.messages(), {}};
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        for (std::size_t j = 0; j < inst.messages(); ++j) {
            if (const auto& p = inst.pref(i, j); p.is_finite()) {
                g.edges.push_back({i, j, p.value()});
            }
        }
    }
    return g;
}

namespace {

std::vector<std::size_t> random_subset(Rng& rng, std::size_t m, std::size_t h) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    // Partial Fisher-Yates: the first h slots become a uniform h-subset.
    for (std::size_t i = 0; i < h; ++i) {
        const auto j = i + rng.uniform_index(m - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(h);
    std::sort(idx.begin(), idx.end());
    return idx;
}

void check_sizes(std::size_t m, std::size_t n, std::size_t h) {
    if (m == 0 || n == 0) {
        throw std::invalid_argument("generator needs m >= 1 and n >= 1");
    }
    if (h >= m) {
        throw std::invalid_argument("side-information size h must be smaller than m");
    }
}

}  // namespace

PpicodInstance gen_uniform(std::size_t m, std::size_t n, std::size_t h, FieldSpec field, std::uint64_t seed) {
    check_sizes(m, n, h);
    Rng rng(seed);
    std::vector<Rank> prefs;
    prefs.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto known = random_subset(rng, m, h);
        std::vector<std::int64_t> ranks(m - h);
        std::iota(ranks.begin(), ranks.end(), 1);
        rng.shuffle(std::span<std::int64_t>(ranks));
        std::size_t next = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (std::binary_search(known.begin(), known.end(), j)) {
                prefs.push_back(Rank::infinity());
            } else {
                prefs.emplace_back(ranks[next++]);
            }
        }
    }
    return {field, n, m, std::move(prefs)};
}

std::vector<Rank> group_biased_row(std::size_t m, std::span<const std::size_t> side_info, int group) {
    if (m != 8) {
        throw std::invalid_argument("group-biased preferences are defined for m = 8 only");
    }
    if (group != 1 && group != 2) {
        throw std::invalid_argument("group must be 1 or 2");
    }
    std::vector<std::size_t> unknown;
    for (std::size_t j = 0; j < m; ++j) {
        if (std::find(side_info.begin(), side_info.end(), j) == side_info.end()) {
            unknown.push_back(j);
        }
    }
    auto key = [&](std::size_t j) { return group == 1 ? j + 1 : (j + 1 + 3) % 8; };
    std::sort(unknown.begin(), unknown.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    std::vector<Rank> row(m, Rank::infinity());
    for (std::size_t r = 0; r < unknown.size(); ++r) {
        row[unknown[r]] = Rank(static_cast<std::int64_t>(r + 1));
    }
    return row;
}

PpicodInstance gen_group_biased(std::size_t m, std::size_t n, std::size_t h, FieldSpec field,
                                std::uint64_t seed) {
    check_sizes(m, n, h);
    if (m != 8) {
        throw std::invalid_argument("group-biased generator requires m = 8");
    }
    if (n % 2 != 0) {
        throw std::invalid_argument("group-biased generator requires an even number of receivers");
    }
    Rng rng(seed);
    std::vector<Rank> prefs;
    prefs.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        const auto known = random_subset(rng, m, h);
        const auto row = group_biased_row(m, known, i < n / 2 ? 1 : 2);
        prefs.insert(prefs.end(), row.begin(), row.end());
    }
    return {field, n, m, std::move(prefs)};
}

namespace {

Rank rank_from_json(const json& v) {
    if (v.is_null()) {
        return Rank::infinity();
    }
    if (v.is_number_integer()) {
        return Rank(v.get<std::int64_t>());
    }
    if (v.is_string()) {
        return Rank(parse_rational(v.get<std::string>()));
    }
    if (v.is_number_float()) {
        throw InstanceError("non-integer rank " + v.dump() + "; write fractions as \"num/den\" strings");
    }
    throw InstanceError("unsupported rank value " + v.dump());
}

}  // namespace

PpicodInstance parse_instance_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InstanceError(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("q") || !doc.contains("P")) {
        throw InstanceError("instance document needs fields \"q\" and \"P\"");
    }
    if (!doc["q"].is_number_unsigned()) {
        throw InstanceError("\"q\" must be a positive integer");
    }
    std::optional<FieldSpec> field;
    try {
        field.emplace(doc["q"].get<std::uint32_t>());
    } catch (const std::invalid_argument& e) {
        throw InstanceError(e.what());
    }
    const auto& grid = doc["P"];
    if (!grid.is_array()) {
        throw InstanceError("\"P\" must be an array of rows");
    }
    std::vector<std::vector<Rank>> rows;
    for (const auto& r : grid) {
        if (!r.is_array()) {
            throw InstanceError("each row of \"P\" must be an array");
        }
        std::vector<Rank> row;
        for (const auto& v : r) {
            try {
                row.push_back(rank_from_json(v));
            } catch (const std::invalid_argument& e) {
                throw InstanceError(e.what());
            }
        }
        rows.push_back(std::move(row));
    }
    try {
        auto inst = PpicodInstance::from_rows(*field, rows);
        require_valid(inst);
        return inst;
    } catch (const std::invalid_argument& e) {
        throw InstanceError(e.what());
    }
}

std::string to_instance_json(const PpicodInstance& inst) {
    // One row per line keeps generated files diffable; the layout is deterministic.
    std::ostringstream out;
    out << "{\"q\":" << inst.field().order() << ",\"P\":[";
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        out << (i == 0 ? "\n  [" : ",\n  [");
        for (std::size_t j = 0; j < inst.messages(); ++j) {
            if (j != 0) {
                out << ',';
            }
            const auto& p = inst.pref(i, j);
            if (p.is_infinite()) {
                out << "null";
            } else if (p.value().denominator() == 1) {
                out << p.value().numerator();
            } else {
                out << '"' << format_rational(p.value()) << '"';
            }
        }
        out << ']';
    }
    out << (inst.receivers() == 0 ? "]}\n" : "\n]}\n");
    return out.str();
}

PpicodInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InstanceError("cannot open instance file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_instance_json(text.str());
}

void save_instance(const PpicodInstance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write instance file " + path.string());
    }
    out << to_instance_json(inst);
}

PpicodInstance example_instance() {
    const auto inf = Rank::infinity();
    return PpicodInstance::from_rows(FieldSpec(2), {{2, inf, 1, inf, 2}, {inf, 1, 2, 1, inf}});
}

}  // namespace ppicod
