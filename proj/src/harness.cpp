#include "ppicod/harness.hpp"

#include "parallel.hpp"
#include "ppicod/csv.hpp"
#include "ppicod/rng.hpp"

#include <istream>
#include <ostream>

namespace ppicod {

RunRecord make_record(const GreedyResult& raw, const GreedyResult* post, std::uint64_t seed, const Rational& alpha,
                      const std::string& eta_spec) {
    RunRecord r;
    r.seed = seed;
    r.alpha = alpha;
    r.eta_spec = eta_spec;
    r.ell = raw.point.ell;
    r.s = raw.point.s;
    if (post != nullptr) {
        r.ell_post = post->point.ell;
        r.s_post = post->point.s;
    }
    r.iters = raw.iterations;
    return r;
}

namespace {

const csv::Row run_header{"seed", "alpha", "eta_spec", "ell", "s_num", "s_den",
                          "ell_post", "s_post_num", "s_post_den", "iters"};
const csv::Row summary_header{"alpha", "runs", "mean_ell", "mean_s", "mean_ell_post", "mean_s_post"};

template <class F>
auto parse_field(const std::string& text, const char* what, F&& f) {
    try {
        return f(text);
    } catch (const std::exception&) {
        throw csv::FormatError(std::string("bad ") + what + " value '" + text + "'");
    }
}

}  // namespace

void write_run_header(std::ostream& out) { csv::write_row(out, run_header); }

void write_run_row(std::ostream& out, const RunRecord& r) {
    csv::write_row(out, {std::to_string(r.seed), format_rational(r.alpha), r.eta_spec, std::to_string(r.ell),
                         std::to_string(r.s.numerator()), std::to_string(r.s.denominator()),
                         r.ell_post ? std::to_string(*r.ell_post) : "",
                         r.s_post ? std::to_string(r.s_post->numerator()) : "",
                         r.s_post ? std::to_string(r.s_post->denominator()) : "", std::to_string(r.iters)});
}

std::vector<RunRecord> read_runs_csv(std::istream& in) {
    csv::expect_header(in, run_header);
    std::vector<RunRecord> out;
    auto to_u64 = [](const std::string& s) { return static_cast<std::uint64_t>(std::stoull(s)); };
    auto to_i64 = [](const std::string& s) { return static_cast<std::int64_t>(std::stoll(s)); };
    while (auto row = csv::read_row(in)) {
        const auto& f = *row;
        if (f.size() != run_header.size()) {
            throw csv::FormatError("run CSV row has " + std::to_string(f.size()) + " fields");
        }
        RunRecord r;
        r.seed = parse_field(f[0], "seed", to_u64);
        r.alpha = parse_field(f[1], "alpha", [](const std::string& s) { return parse_rational(s); });
        r.eta_spec = f[2];
        r.ell = parse_field(f[3], "ell", to_u64);
        r.s = Rational(parse_field(f[4], "s_num", to_i64), parse_field(f[5], "s_den", to_i64));
        if (!f[6].empty()) {
            r.ell_post = parse_field(f[6], "ell_post", to_u64);
            r.s_post = Rational(parse_field(f[7], "s_post_num", to_i64), parse_field(f[8], "s_post_den", to_i64));
        }
        r.iters = parse_field(f[9], "iters", to_u64);
        out.push_back(std::move(r));
    }
    return out;
}

GeneratorSpec GeneratorSpec::parse(Kind kind, const std::vector<std::string>& assignments) {
    GeneratorSpec spec;
    spec.kind = kind;
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value, got '" + a + "'");
        }
        const auto key = a.substr(0, eq);
        const auto value = a.substr(eq + 1);
        std::size_t parsed = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(value, &parsed);
        } catch (const std::exception&) {
            parsed = 0;
        }
        if (parsed != value.size() || value.empty()) {
            throw std::invalid_argument("generator parameter '" + key + "' needs a non-negative integer");
        }
        if (key == "m") {
            spec.m = v;
        } else if (key == "n") {
            spec.n = v;
        } else if (key == "h") {
            spec.h = v;
        } else if (key == "q") {
            spec.q = static_cast<std::uint32_t>(v);
        } else {
            throw std::invalid_argument("unknown generator parameter '" + key + "'");
        }
    }
    return spec;
}

PpicodInstance GeneratorSpec::make(std::uint64_t seed) const {
    const FieldSpec field(q);
    return kind == Kind::Uniform ? gen_uniform(m, n, h, field, seed) : gen_group_biased(m, n, h, field, seed);
}

std::string GeneratorSpec::describe() const {
    return std::string(kind == Kind::Uniform ? "uniform" : "biased") + " m=" + std::to_string(m) +
           " n=" + std::to_string(n) + " h=" + std::to_string(h) + " q=" + std::to_string(q);
}

std::uint64_t instance_seed(std::uint64_t base, std::size_t k) { return derive_seed(base, 2 * k); }

std::uint64_t run_seed(std::uint64_t base, std::size_t k, std::size_t r) {
    return derive_seed(derive_seed(base, 2 * k + 1), r);
}

SweepResult run_sweep(const SweepConfig& config) {
    if (config.alphas.empty()) {
        throw std::invalid_argument("sweep needs at least one alpha");
    }
    for (const auto& a : config.alphas) {
        if (a < 0 || a > 1) {
            throw std::invalid_argument("alpha values must lie in [0, 1]");
        }
    }
    if (config.repetitions == 0) {
        throw std::invalid_argument("repetitions must be positive");
    }
    const std::size_t instances = config.instance ? 1 : config.instances;
    if (instances == 0) {
        throw std::invalid_argument("sweep needs at least one instance");
    }
    const std::optional<PpicodInstance> fixed =
        config.instance ? std::optional<PpicodInstance>(load_instance(*config.instance)) : std::nullopt;

    const std::size_t per_instance = config.alphas.size() * config.repetitions;
    SweepResult result;
    result.points.resize(instances * per_instance);

    detail::parallel_for(instances, config.threads, [&](std::size_t, std::size_t k) {
        const PpicodInstance inst = fixed ? *fixed : config.generator.make(instance_seed(config.seed, k));
        const auto eta = config.eta.resolve(inst);
        for (std::size_t a = 0; a < config.alphas.size(); ++a) {
            for (std::size_t r = 0; r < config.repetitions; ++r) {
                const auto seed = run_seed(config.seed, k, r);
                const GreedyParams params{config.alphas[a], eta, seed};
                const auto raw = prgrcov(inst, params);
                std::optional<GreedyResult> post;
                if (config.post) {
                    post = postprocess(raw, inst);
                }
                auto& slot = result.points[k * per_instance + a * config.repetitions + r];
                slot.instance = k;
                slot.record = make_record(raw, post ? &*post : nullptr, seed, config.alphas[a], config.eta.text());
            }
        }
    });

    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
        AlphaSummary sum;
        sum.alpha = config.alphas[a];
        Rational ell = 0;
        Rational s = 0;
        Rational ell_post = 0;
        Rational s_post = 0;
        for (std::size_t k = 0; k < instances; ++k) {
            for (std::size_t r = 0; r < config.repetitions; ++r) {
                const auto& p = result.points[k * per_instance + a * config.repetitions + r];
                ++sum.runs;
                ell += static_cast<std::int64_t>(p.record.ell);
                s += p.record.s;
                if (p.record.ell_post) {
                    ell_post += static_cast<std::int64_t>(*p.record.ell_post);
                    s_post += *p.record.s_post;
                }
            }
        }
        const Rational runs(static_cast<std::int64_t>(sum.runs));
        sum.mean_ell = ell / runs;
        sum.mean_s = s / runs;
        if (config.post) {
            sum.mean_ell_post = ell_post / runs;
            sum.mean_s_post = s_post / runs;
        }
        result.summary.push_back(sum);
    }
    return result;
}

void write_summary_csv(std::ostream& out, const std::vector<AlphaSummary>& summary) {
    csv::write_row(out, summary_header);
    for (const auto& s : summary) {
        csv::write_row(out, {format_rational(s.alpha), std::to_string(s.runs), format_rational(s.mean_ell),
                             format_rational(s.mean_s), s.mean_ell_post ? format_rational(*s.mean_ell_post) : "",
                             s.mean_s_post ? format_rational(*s.mean_s_post) : ""});
    }
}

std::vector<AlphaSummary> read_summary_csv(std::istream& in) {
    csv::expect_header(in, summary_header);
    std::vector<AlphaSummary> out;
    auto rat = [](const std::string& s) { return parse_rational(s); };
    while (auto row = csv::read_row(in)) {
        const auto& f = *row;
        if (f.size() != summary_header.size()) {
            throw csv::FormatError("summary CSV row has " + std::to_string(f.size()) + " fields");
        }
        AlphaSummary s;
        s.alpha = parse_field(f[0], "alpha", rat);
        s.runs = parse_field(f[1], "runs", [](const std::string& t) { return std::stoull(t); });
        s.mean_ell = parse_field(f[2], "mean_ell", rat);
        s.mean_s = parse_field(f[3], "mean_s", rat);
        if (!f[4].empty()) {
            s.mean_ell_post = parse_field(f[4], "mean_ell_post", rat);
        }
        if (!f[5].empty()) {
            s.mean_s_post = parse_field(f[5], "mean_s_post", rat);
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace ppicod
