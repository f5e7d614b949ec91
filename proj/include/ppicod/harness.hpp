#pragma once

// Experiment plumbing shared by the command-line tool and the tests: run records,
// generator specifications and alpha sweeps.

#include "ppicod/greedy.hpp"
#include "ppicod/instance.hpp"
#include "ppicod/rank.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ppicod {

/// One greedy run: `seed,alpha,eta_spec,ell,s_num,s_den,ell_post,s_post_num,s_post_den,iters`.
/// The post columns are empty when post-processing was not requested.
struct RunRecord {
    std::uint64_t seed = 0;
    Rational alpha;
    std::string eta_spec;
    std::size_t ell = 0;
    Rational s;
    std::optional<std::size_t> ell_post;
    std::optional<Rational> s_post;
    std::size_t iters = 0;

    bool operator==(const RunRecord&) const = default;
};

RunRecord make_record(const GreedyResult& raw, const GreedyResult* post, std::uint64_t seed, const Rational& alpha,
                      const std::string& eta_spec);

void write_run_header(std::ostream& out);
void write_run_row(std::ostream& out, const RunRecord& r);
std::vector<RunRecord> read_runs_csv(std::istream& in);

/// `uniform` or `biased` plus key=value overrides of m, n, h, q. Defaults: m=8 n=20 h=3 q=2.
struct GeneratorSpec {
    enum class Kind { Uniform, Biased };

    Kind kind = Kind::Uniform;
    std::size_t m = 8;
    std::size_t n = 20;
    std::size_t h = 3;
    std::uint32_t q = 2;

    static GeneratorSpec parse(Kind kind, const std::vector<std::string>& assignments);
    [[nodiscard]] PpicodInstance make(std::uint64_t seed) const;
    [[nodiscard]] std::string describe() const;
};

struct SweepConfig {
    std::optional<std::filesystem::path> instance;  // otherwise generate
    GeneratorSpec generator;
    std::size_t instances = 1;
    std::vector<Rational> alphas;
    EtaSpec eta = EtaSpec::parse("3");
    std::uint64_t seed = 0;
    std::size_t repetitions = 1;  // greedy seeds per (instance, alpha)
    bool post = false;
    std::size_t threads = 1;
};

struct SweepPoint {
    std::size_t instance = 0;
    RunRecord record;
};

/// Exact per-alpha means over all runs.
struct AlphaSummary {
    Rational alpha;
    std::size_t runs = 0;
    Rational mean_ell;
    Rational mean_s;
    std::optional<Rational> mean_ell_post;
    std::optional<Rational> mean_s_post;

    bool operator==(const AlphaSummary&) const = default;
};

struct SweepResult {
    std::vector<SweepPoint> points;  // instance-major, then alpha, then repetition
    std::vector<AlphaSummary> summary;
};

/// Seed of generated instance k.
std::uint64_t instance_seed(std::uint64_t base, std::size_t k);
/// Greedy seed for repetition r on instance k; shared by every alpha.
std::uint64_t run_seed(std::uint64_t base, std::size_t k, std::size_t r);

SweepResult run_sweep(const SweepConfig& config);

/// `alpha,runs,mean_ell,mean_s,mean_ell_post,mean_s_post`, means as exact rationals.
void write_summary_csv(std::ostream& out, const std::vector<AlphaSummary>& summary);
std::vector<AlphaSummary> read_summary_csv(std::istream& in);

}  // namespace ppicod
