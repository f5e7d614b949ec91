#include "ppicod/greedy.hpp"

#include "ppicod/rng.hpp"

#include <algorithm>
#include <sstream>

namespace ppicod {

EtaSpec EtaSpec::parse(const std::string& text) {
    EtaSpec spec;
    spec.text_ = text;
    if (text == "min") {
        spec.kind_ = Kind::Min;
        return spec;
    }
    if (text == "rowmax") {
        spec.kind_ = Kind::RowMax;
        return spec;
    }
    std::stringstream items(text);
    std::string item;
    while (std::getline(items, item, ',')) {
        const auto v = parse_rational(item);
        if (v <= 0) {
            throw std::invalid_argument("eta values must be positive, got '" + item + "'");
        }
        spec.values_.push_back(v);
    }
    if (spec.values_.empty()) {
        throw std::invalid_argument("empty eta specification");
    }
    spec.kind_ = spec.values_.size() == 1 && text.find(',') == std::string::npos ? Kind::Scalar : Kind::List;
    return spec;
}

std::vector<Rational> EtaSpec::resolve(const PpicodInstance& inst) const {
    const std::size_t n = inst.receivers();
    std::vector<Rational> eta;
    switch (kind_) {
        case Kind::Scalar:
            eta.assign(n, values_.front());
            break;
        case Kind::List:
            if (values_.size() != n) {
                throw std::invalid_argument("eta list has " + std::to_string(values_.size()) + " values for " +
                                            std::to_string(n) + " receivers");
            }
            eta = values_;
            break;
        case Kind::Min:
            for (std::size_t i = 0; i < n; ++i) {
                eta.push_back(inst.min_rank(i));
            }
            break;
        case Kind::RowMax:
            for (std::size_t i = 0; i < n; ++i) {
                eta.push_back(inst.max_rank(i));
            }
            break;
    }
    return eta;
}

InfeasibleError::InfeasibleError(std::size_t receiver, const std::string& what)
    : std::runtime_error(what), receiver_(receiver) {}

LiveEdges::LiveEdges(const PpicodInstance& inst)
    : m_(inst.messages()), live_(inst.receivers() * inst.messages(), 0), receiver_live_(inst.receivers(), 1) {
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        for (std::size_t j = 0; j < m_; ++j) {
            live_[i * m_ + j] = inst.pref(i, j).is_finite() ? 1 : 0;
        }
    }
}

void LiveEdges::prune_receiver(std::size_t receiver) {
    std::fill_n(live_.begin() + static_cast<std::ptrdiff_t>(receiver * m_), m_, 0);
    receiver_live_[receiver] = 0;
}

std::vector<SatisfiedReceiver> satisfied_set(const PpicodInstance& inst, const std::vector<std::size_t>& subset,
                                             const LiveEdges& live, const std::vector<Rational>& eta) {
    std::vector<SatisfiedReceiver> out;
    for (std::size_t u = 0; u < inst.receivers(); ++u) {
        std::size_t edges = 0;
        std::size_t witness = 0;
        for (const auto v : subset) {
            if (live.live(u, v)) {
                ++edges;
                witness = v;
            }
        }
        if (edges != 1) {
            continue;
        }
        const auto& w = inst.pref(u, witness).value();
        if (compare(w, eta[u]) <= 0) {
            out.push_back({u, witness, w});
        }
    }
    return out;
}

namespace {

Rational eta_max(const std::vector<Rational>& eta) {
    Rational best = eta.front();
    for (const auto& e : eta) {
        if (compare(e, best) > 0) {
            best = e;
        }
    }
    return best;
}

Rational fitness_value(std::size_t satisfied, const Rational& rank_sum, const Rational& alpha,
                       const Rational& empty_value) {
    if (satisfied == 0) {
        return empty_value;
    }
    const Rational count(static_cast<std::int64_t>(satisfied));
    return alpha * count - (Rational(1) - alpha) * (rank_sum / count);
}

void check_params(const PpicodInstance& inst, const GreedyParams& params) {
    if (params.alpha < 0 || params.alpha > 1) {
        throw std::invalid_argument("alpha must lie in [0, 1]");
    }
    if (params.eta.size() != inst.receivers()) {
        throw std::invalid_argument("eta needs one threshold per receiver");
    }
    for (const auto& e : params.eta) {
        if (e <= 0) {
            throw std::invalid_argument("eta thresholds must be positive");
        }
    }
    for (std::size_t u = 0; u < inst.receivers(); ++u) {
        if (compare(inst.min_rank(u), params.eta[u]) > 0) {
            throw InfeasibleError(u, "receiver " + std::to_string(u + 1) + " has no message ranked within eta = " +
                                         format_rational(params.eta[u]) + " (best rank " +
                                         format_rational(inst.min_rank(u)) + ")");
        }
    }
}

}  // namespace

Rational fitness(const PpicodInstance& inst, const std::vector<std::size_t>& subset, const LiveEdges& live,
                 const GreedyParams& params) {
    const auto sat = satisfied_set(inst, subset, live, params.eta);
    Rational sum = 0;
    for (const auto& s : sat) {
        sum += s.rank;
    }
    return fitness_value(sat.size(), sum, params.alpha, -(eta_max(params.eta) + 1));
}

GreedyResult prgrcov(const PpicodInstance& inst, const GreedyParams& params) {
    require_valid(inst);
    check_params(inst, params);
    const std::size_t n = inst.receivers();
    const std::size_t m = inst.messages();
    const Rational empty_value = -(eta_max(params.eta) + 1);
    const Rational& alpha = params.alpha;

    Rng rng(params.seed);
    LiveEdges live(inst);
    GreedyResult result;
    result.decoding.assign(n, 0);
    std::size_t satisfied_total = 0;

    std::vector<std::size_t> edges_into(n);
    std::vector<std::size_t> witness(n);
    std::vector<char> in_subset(m);
    std::vector<std::size_t> best;

    while (satisfied_total != n) {
        std::fill(edges_into.begin(), edges_into.end(), 0);
        std::fill(in_subset.begin(), in_subset.end(), 0);
        std::vector<std::size_t> subset;
        Rational current = empty_value;

        while (true) {
            // Score S + {j} for each j by updating the per-receiver edge counts of S.
            std::optional<Rational> best_value;
            best.clear();
            for (std::size_t j = 0; j < m; ++j) {
                if (in_subset[j]) {
                    continue;
                }
                std::size_t count = 0;
                Rational sum = 0;
                for (std::size_t u = 0; u < n; ++u) {
                    if (!live.receiver_live(u)) {
                        continue;
                    }
                    const bool edge = live.live(u, j);
                    const std::size_t k = edges_into[u] + (edge ? 1 : 0);
                    if (k != 1) {
                        continue;
                    }
                    const auto& w = inst.pref(u, edge ? j : witness[u]).value();
                    if (compare(w, params.eta[u]) <= 0) {
                        ++count;
                        sum += w;
                    }
                }
                const auto value = fitness_value(count, sum, alpha, empty_value);
                if (!best_value || compare(value, *best_value) > 0) {
                    best_value = value;
                    best.assign(1, j);
                } else if (compare(value, *best_value) == 0) {
                    best.push_back(j);
                }
            }
            if (best.empty()) {
                break;  // S already holds every message
            }
            const std::size_t pick = best[rng.uniform_index(best.size())];
            if (compare(*best_value, current) <= 0) {
                break;
            }
            in_subset[pick] = 1;
            subset.push_back(pick);
            current = *best_value;
            ++result.additions;
            for (std::size_t u = 0; u < n; ++u) {
                if (live.receiver_live(u) && live.live(u, pick)) {
                    ++edges_into[u];
                    witness[u] = pick;
                }
            }
        }

        std::sort(subset.begin(), subset.end());
        auto sat = satisfied_set(inst, subset, live, params.eta);
        if (sat.empty()) {
            throw std::logic_error("greedy iteration satisfied no receiver");
        }
        for (const auto& s : sat) {
            result.decoding[s.receiver] = s.witness;
            live.prune_receiver(s.receiver);
        }
        satisfied_total += sat.size();
        result.subcodes.push_back({subset, std::move(sat), current});
        ++result.iterations;
    }

    FqMatrix code(inst.field(), result.subcodes.size(), m);
    Rational s = 0;
    for (std::size_t r = 0; r < result.subcodes.size(); ++r) {
        for (const auto j : result.subcodes[r].messages) {
            code.at(r, j) = 1;
        }
        for (const auto& sr : result.subcodes[r].satisfied) {
            s += sr.rank;
        }
    }
    result.point = {code.rows(), s, {}};
    result.code = {std::move(code), result.decoding};
    return result;
}

GreedyResult grcov(const PpicodInstance& inst, std::uint64_t seed) {
    GreedyParams params{Rational(1), EtaSpec::parse("rowmax").resolve(inst), seed};
    return prgrcov(inst, params);
}

GreedyResult postprocess(const GreedyResult& result, const PpicodInstance& inst) {
    GreedyResult out = result;
    const auto basis = row_space_basis(result.code.matrix);
    const auto report = decodability(basis, inst);
    Rational s = 0;
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        const auto& r = report.receivers[i];
        if (!r.best_message) {
            throw std::logic_error("post-processing found receiver " + std::to_string(i + 1) + " unable to decode");
        }
        out.decoding[i] = *r.best_message;
        s += *r.best_rank;
    }
    out.point = {basis.rows(), s, {}};
    out.code = {basis, out.decoding};
    return out;
}

bool audit(const GreedyResult& result, const PpicodInstance& inst) {
    if (result.decoding.size() != inst.receivers()) {
        return false;
    }
    Rational s = 0;
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        const auto dec = decodable_messages(result.code.matrix, inst, i);
        if (!std::binary_search(dec.begin(), dec.end(), result.decoding[i])) {
            return false;
        }
        s += inst.pref(i, result.decoding[i]).value();
    }
    return s == result.point.s && result.point.ell == result.code.matrix.rows();
}

}  // namespace ppicod
