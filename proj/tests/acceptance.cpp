// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "brute.hpp"

#include "ppicod/greedy.hpp"
#include "ppicod/harness.hpp"
#include "ppicod/oracle.hpp"
#include "ppicod/rref_enum.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <chrono>
#include <functional>
#include <random>
#include <set>

using namespace ppicod;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool ok;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Verdict()>& body) {
    const auto start = Clock::now();
    Verdict v{false, ""};
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        v.ok = false;
        v.detail += fmt::format("; over the {:.0f} s limit", limit_seconds);
    }
    failures += v.ok ? 0 : 1;
    fmt::print("{} [{}] {} ({:.2f} s) {}\n", v.ok ? "PASS" : "FAIL", id, title, secs, v.detail);
    std::fflush(stdout);
}

const Rank inf = Rank::infinity();

PpicodInstance tiny_instance(std::mt19937_64& gen, std::uint32_t q) {
    const std::size_t m = 2 + gen() % 3;  // 2..4
    const std::size_t n = 1 + gen() % 3;  // 1..3
    std::vector<std::vector<Rank>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rank> row(m);
        for (auto& r : row) {
            r = static_cast<std::int64_t>(1 + gen() % m);
        }
        const std::size_t h = gen() % (std::min<std::size_t>(2, m - 1) + 1);
        std::vector<std::size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), gen);
        for (std::size_t k = 0; k < h; ++k) {
            row[idx[k]] = inf;
        }
        rows.push_back(std::move(row));
    }
    return PpicodInstance::from_rows(FieldSpec(q), rows);
}

PpicodInstance greedy_instance(std::mt19937_64& gen) {
    const std::size_t m = 2 + gen() % 9;   // 2..10
    const std::size_t n = 1 + gen() % 25;  // 1..25
    if (gen() % 2 == 0) {
        return gen_uniform(m, n, gen() % m, FieldSpec(2), gen());
    }
    std::vector<std::vector<Rank>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rank> row(m);
        for (auto& r : row) {
            r = gen() % 3 == 0 ? inf : Rank(Rational(static_cast<std::int64_t>(1 + gen() % 8), static_cast<std::int64_t>(1 + gen() % 2)));
        }
        row[gen() % m] = Rank(static_cast<std::int64_t>(1 + gen() % 4));
        rows.push_back(std::move(row));
    }
    return PpicodInstance::from_rows(FieldSpec(2), rows);
}

const std::vector<Rational> sweep_alphas{Rational(1, 20), Rational(1, 5), Rational(3, 10),
                                         Rational(1, 2),  Rational(4, 5), Rational(1)};

}  // namespace

int main() {
    criterion(1, "example instance: both methods give {(1,3),(2,2)}; no length-1 code has s = 2 or 4", 1, [] {
        const auto inst = example_instance();
        const std::vector<Pair> expect{{1, 3}, {2, 2}};
        const auto m2 = method2_boundary(inst).front.pairs();
        const auto m1 = method1_boundary(inst).front.pairs();
        std::set<Rational> length_one;
        for (const auto& [ell, s] : brute::achievable(inst, 1)) {
            length_one.insert(s);
        }
        const bool ok = m1 == expect && m2 == expect && !length_one.contains(2) && !length_one.contains(4);
        return Verdict{ok, fmt::format("length-1 satisfaction values: {}", length_one.size() == 1 && length_one.contains(3) ? "{3}" : "other")};
    });

    criterion(2, "methods 1 and 2 agree on 50 random small instances", 120, [] {
        std::mt19937_64 gen(2);
        int mismatches = 0;
        for (int k = 0; k < 50; ++k) {
            const auto inst = tiny_instance(gen, k % 2 == 0 ? 2 : 3);
            if (method1_boundary(inst).front.pairs() != method2_boundary(inst).front.pairs()) {
                ++mismatches;
            }
        }
        return Verdict{mismatches == 0, fmt::format("{} mismatches", mismatches)};
    });

    criterion(3, "enumeration counts equal Gaussian binomials; m=8, q=2 has 417199 subspaces", 0, [] {
        int bad = 0;
        for (const std::uint32_t q : {2u, 3u}) {
            const FieldSpec f(q);
            for (std::size_t m = 1; m <= 5; ++m) {
                for (std::size_t k = 0; k <= m; ++k) {
                    std::uint64_t counted = 0;
                    for_each_rref(m, f, k, k, [&](const FqMatrix&) { ++counted; });
                    bad += counted == brute::gaussian(m, k, q) ? 0 : 1;
                }
            }
        }
        std::uint64_t full = 0;
        for_each_rref(8, FieldSpec(2), 0, 8, [&](const FqMatrix&) { ++full; });
        const auto visited = method2_boundary(gen_uniform(8, 20, 3, FieldSpec(2), 1)).enumerated;
        return Verdict{bad == 0 && full == 417199 && visited == 417198,
                       fmt::format("{} count mismatches, full count {}, nonzero visited {}", bad, full, visited)};
    });

    criterion(4, "greedy outputs pass the decode audit; postprocess never worsens (500 instances)", 0, [] {
        std::mt19937_64 gen(4);
        int violations = 0;
        for (int k = 0; k < 500; ++k) {
            const auto inst = greedy_instance(gen);
            const char* specs[] = {"rowmax", "min", "5", "3"};
            auto spec = EtaSpec::parse(specs[gen() % 4]);
            auto eta = spec.resolve(inst);
            for (std::size_t i = 0; i < inst.receivers(); ++i) {
                eta[i] = std::max(eta[i], inst.min_rank(i));
            }
            const GreedyParams params{sweep_alphas[gen() % sweep_alphas.size()], eta, gen()};
            const auto raw = prgrcov(inst, params);
            const auto post = postprocess(raw, inst);
            bool ok = audit(raw, inst) && audit(post, inst);
            for (std::size_t i = 0; i < inst.receivers(); ++i) {
                const auto dec = brute::decodable(brute::to_mat(raw.code.matrix), inst, i);
                ok = ok && std::binary_search(dec.begin(), dec.end(), raw.decoding[i]);
            }
            ok = ok && post.point.ell <= raw.point.ell && post.point.s <= raw.point.s;
            violations += ok ? 0 : 1;
        }
        return Verdict{violations == 0, fmt::format("{} violations", violations)};
    });

    criterion(5, "alpha = 1 with row-maximum thresholds reproduces the original greedy cover (100 x 5)", 0, [] {
        std::mt19937_64 gen(5);
        int diffs = 0;
        for (int k = 0; k < 100; ++k) {
            const auto inst = greedy_instance(gen);
            const auto eta = EtaSpec::parse("rowmax").resolve(inst);
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                diffs += grcov(inst, seed).subcodes == prgrcov(inst, {Rational(1), eta, seed}).subcodes ? 0 : 1;
            }
        }
        return Verdict{diffs == 0, fmt::format("{} trace differences", diffs)};
    });

    criterion(6, "minimum thresholds reach sum_i min_j P_ij (200 instances); s = 20 at m=8, n=20, h=3", 0, [] {
        std::mt19937_64 gen(6);
        int misses = 0;
        int above_m = 0;
        for (int k = 0; k < 200; ++k) {
            const auto inst = greedy_instance(gen);
            Rational floor = 0;
            for (std::size_t i = 0; i < inst.receivers(); ++i) {
                floor += inst.min_rank(i);
            }
            if (floor > static_cast<std::int64_t>(inst.messages())) {
                ++above_m;
            }
            const auto r = prgrcov(inst, {sweep_alphas[gen() % 6], EtaSpec::parse("min").resolve(inst), gen()});
            misses += r.point.s == floor ? 0 : 1;
        }
        const auto big = gen_uniform(8, 20, 3, FieldSpec(2), 6);
        const auto s = prgrcov(big, {Rational(1, 2), EtaSpec::parse("min").resolve(big), 6}).point.s;
        return Verdict{misses == 0 && s == 20,
                       fmt::format("{} misses, m=8 instance s = {}, {} instances with the sum above m", misses,
                                   format_rational(s), above_m)};
    });

    criterion(7, "mean ell falls and mean s rises from alpha = 0.05 to alpha = 1 (200 instances)", 60, [] {
        SweepConfig config;
        config.instances = 200;
        config.alphas = {Rational(1, 20), Rational(1)};
        config.eta = EtaSpec::parse("3");
        config.seed = 7;
        const auto r = run_sweep(config);
        const auto& lo = r.summary[0];
        const auto& hi = r.summary[1];
        const bool ok = hi.mean_ell < lo.mean_ell && hi.mean_s > lo.mean_s;
        return Verdict{ok, fmt::format("alpha=0.05: ell {:.3f} s {:.3f}; alpha=1: ell {:.3f} s {:.3f}",
                                       to_double(lo.mean_ell), to_double(lo.mean_s), to_double(hi.mean_ell),
                                       to_double(hi.mean_s))};
    });

    criterion(8, "m=8, n=20, h=3: exact boundary; post-processed greedy points never beat it, ell <= 8", 600, [] {
        const auto inst = gen_uniform(8, 20, 3, FieldSpec(2), 8);
        const auto boundary = method2_boundary(inst);
        const auto eta = EtaSpec::parse("3").resolve(inst);
        int beats = 0;
        int too_long = 0;
        std::set<Pair> seen;
        for (const auto& alpha : sweep_alphas) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                const auto post = postprocess(prgrcov(inst, {alpha, eta, seed}), inst);
                seen.emplace(post.point.ell, post.point.s);
                for (const auto& b : boundary.front.points()) {
                    beats += dominates(post.point, b) ? 1 : 0;
                }
                too_long += post.point.ell <= 8 ? 0 : 1;
            }
        }
        std::string front;
        for (const auto& [ell, s] : boundary.front.pairs()) {
            front += fmt::format("({},{})", ell, format_rational(s));
        }
        return Verdict{beats == 0 && too_long == 0,
                       fmt::format("front {} over {} subspaces; {} distinct greedy points, {} beat it, {} too long",
                                   front, boundary.enumerated, seen.size(), beats, too_long)};
    });

    criterion(9, "rate-cap codes keep s; GF(7) Vandermonde codes decode everything for m <= 5", 0, [] {
        std::mt19937_64 gen(9);
        int bad = 0;
        for (int k = 0; k < 200; ++k) {
            const auto inst = tiny_instance(gen, k % 2 == 0 ? 2 : 7);
            for (const auto& [d, s] : enumerate_decoding_choices(inst)) {
                for (const auto& code : ratecap_codes(inst, d)) {
                    bool ok = satisfaction(*code.decoding, inst) == s;
                    for (std::size_t i = 0; i < inst.receivers(); ++i) {
                        const auto dec = brute::decodable(brute::to_mat(code.matrix), inst, i);
                        ok = ok && std::binary_search(dec.begin(), dec.end(), d[i]);
                    }
                    bad += ok ? 0 : 1;
                }
            }
        }
        const FieldSpec f7(7);
        int mds_bad = 0;
        for (std::size_t m = 1; m <= 5; ++m) {
            for (std::size_t h = 0; h < m; ++h) {
                const auto g = vandermonde_mds(f7, m, m - h);
                for (unsigned mask = 0; mask < (1u << m); ++mask) {
                    if (static_cast<std::size_t>(std::popcount(mask)) < h ||
                        static_cast<std::size_t>(std::popcount(mask)) == m) {
                        continue;
                    }
                    std::vector<Rank> row(m, 1);
                    for (std::size_t j = 0; j < m; ++j) {
                        if ((mask >> j) & 1u) {
                            row[j] = inf;
                        }
                    }
                    const auto one = PpicodInstance::from_rows(f7, {row});
                    mds_bad += decodable_messages(g, one, 0) == one.unknown(0) ? 0 : 1;
                }
            }
        }
        return Verdict{bad == 0 && mds_bad == 0, fmt::format("{} failed rate-cap audits, {} MDS failures", bad, mds_bad)};
    });

    criterion(10, "fronts are strictly monotone; merge is associative (1000 random sets)", 0, [] {
        std::mt19937_64 gen(10);
        auto points = [&] {
            std::vector<LengthSatisfactionPoint> out(gen() % 20);
            for (auto& p : out) {
                p.ell = gen() % 9;
                p.s = Rational(static_cast<std::int64_t>(1 + gen() % 30), static_cast<std::int64_t>(1 + gen() % 4));
            }
            return out;
        };
        int bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const auto a = pareto_front(points());
            const auto b = pareto_front(points());
            const auto c = pareto_front(points());
            const auto pa = a.pairs();
            for (std::size_t i = 1; i < pa.size(); ++i) {
                bad += pa[i - 1].first < pa[i].first && pa[i - 1].second > pa[i].second ? 0 : 1;
            }
            bad += merge(merge(a, b), c) == merge(a, merge(b, c)) ? 0 : 1;
        }
        return Verdict{bad == 0, fmt::format("{} violations", bad)};
    });

    return failures == 0 ? 0 : 1;
}
