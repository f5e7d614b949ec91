#include "ppicod/pareto.hpp"

#include "ppicod/csv.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace ppicod {

bool witness_less(const Witness& a, const Witness& b) {
    if (a.index() != b.index()) {
        return a.index() < b.index();
    }
    return std::visit(
        [&](const auto& lhs) {
            using T = std::decay_t<decltype(lhs)>;
            return lhs < std::get<T>(b);
        },
        a);
}

bool dominates(const LengthSatisfactionPoint& a, const LengthSatisfactionPoint& b) {
    const auto s_cmp = compare(a.s, b.s);
    return a.ell <= b.ell && s_cmp <= 0 && (a.ell < b.ell || s_cmp < 0);
}

void ParetoFront::add_witnesses(LengthSatisfactionPoint& into, std::vector<Witness> extra) const {
    auto& w = into.witnesses;
    w.insert(w.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    std::sort(w.begin(), w.end(), witness_less);
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (witness_limit_ != 0 && w.size() > witness_limit_) {
        w.resize(witness_limit_);
    }
}

bool ParetoFront::insert(LengthSatisfactionPoint p) {
    for (auto& q : points_) {
        if (q.same_pair(p)) {
            add_witnesses(q, std::move(p.witnesses));
            return true;
        }
        if (dominates(q, p)) {
            return false;
        }
    }
    std::erase_if(points_, [&](const LengthSatisfactionPoint& q) { return dominates(p, q); });
    add_witnesses(p, {});
    const auto pos = std::lower_bound(points_.begin(), points_.end(), p.ell,
                                      [](const LengthSatisfactionPoint& q, std::size_t ell) { return q.ell < ell; });
    points_.insert(pos, std::move(p));
    return true;
}

std::vector<Pair> ParetoFront::pairs() const {
    std::vector<Pair> out;
    out.reserve(points_.size());
    for (const auto& p : points_) {
        out.emplace_back(p.ell, p.s);
    }
    return out;
}

bool ParetoFront::dominated(const LengthSatisfactionPoint& p) const {
    return std::any_of(points_.begin(), points_.end(), [&](const auto& q) { return dominates(q, p); });
}

bool ParetoFront::operator==(const ParetoFront& rhs) const {
    if (points_.size() != rhs.points_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!points_[i].same_pair(rhs.points_[i]) || points_[i].witnesses != rhs.points_[i].witnesses) {
            return false;
        }
    }
    return true;
}

ParetoFront pareto_front(std::vector<LengthSatisfactionPoint> points, std::size_t witness_limit) {
    ParetoFront front(witness_limit);
    for (auto& p : points) {
        front.insert(std::move(p));
    }
    return front;
}

ParetoFront merge(const ParetoFront& a, const ParetoFront& b) {
    std::size_t limit = 0;
    if (a.witness_limit() != 0 && b.witness_limit() != 0) {
        limit = std::max(a.witness_limit(), b.witness_limit());
    }
    ParetoFront out(limit);
    for (const auto& p : a.points()) {
        out.insert(p);
    }
    for (const auto& p : b.points()) {
        out.insert(p);
    }
    return out;
}

namespace {

const csv::Row front_header{"ell", "s_num", "s_den", "witness_id"};

}  // namespace

void write_front_csv(std::ostream& out, const ParetoFront& front) {
    csv::write_row(out, front_header);
    for (const auto& p : front.points()) {
        std::string id;
        for (const auto& w : p.witnesses) {
            if (const auto* s = std::get_if<std::string>(&w)) {
                id = *s;
                break;
            }
        }
        csv::write_row(out, {std::to_string(p.ell), std::to_string(p.s.numerator()),
                             std::to_string(p.s.denominator()), id});
    }
}

ParetoFront read_front_csv(std::istream& in) {
    csv::expect_header(in, front_header);
    ParetoFront front;
    while (auto row = csv::read_row(in)) {
        if (row->size() != front_header.size()) {
            throw csv::FormatError("front CSV row has " + std::to_string(row->size()) + " fields");
        }
        LengthSatisfactionPoint p;
        try {
            p.ell = std::stoull((*row)[0]);
            p.s = Rational(std::stoll((*row)[1]), std::stoll((*row)[2]));
        } catch (const std::exception& e) {
            throw csv::FormatError(std::string("bad number in front CSV: ") + e.what());
        }
        if (!(*row)[3].empty()) {
            p.witnesses.emplace_back((*row)[3]);
        }
        front.insert(std::move(p));
    }
    return front;
}

}  // namespace ppicod
