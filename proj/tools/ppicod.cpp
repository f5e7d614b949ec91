// Command-line front end: instance generation, greedy runs, sweeps, exhaustive
// boundaries, code checks and plots.
//
// Exit codes: 0 success, 1 validity failure, 2 usage, 3 budget refusal.

#include "ppicod/csv.hpp"
#include "ppicod/greedy.hpp"
#include "ppicod/harness.hpp"
#include "ppicod/instance.hpp"
#include "ppicod/oracle.hpp"
#include "ppicod/pareto.hpp"
#include "ppicod/svg.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace ppicod;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<Rational> parse_alphas(const std::vector<std::string>& texts) {
    std::vector<Rational> out;
    for (const auto& t : texts) {
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto a = parse_rational(item);
            if (a < 0 || a > 1) {
                throw UsageError("alpha " + item + " outside [0, 1]");
            }
            out.push_back(a);
        }
    }
    return out;
}

std::string rank_text(const std::optional<Rational>& r) { return r ? format_rational(*r) : "-"; }

std::string message_list(const std::vector<std::size_t>& msgs) {
    std::string out = "{";
    for (std::size_t i = 0; i < msgs.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(msgs[i] + 1);
    }
    return out + "}";
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode | std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    return in;
}

void print_summary(std::ostream& out, const PpicodInstance& inst) {
    std::size_t hmin = inst.messages();
    std::size_t hmax = 0;
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        hmin = std::min(hmin, inst.side_info(i).size());
        hmax = std::max(hmax, inst.side_info(i).size());
    }
    out << "n=" << inst.receivers() << " m=" << inst.messages() << " q=" << inst.field().order() << " h=";
    if (inst.receivers() == 0 || hmin == hmax) {
        out << hmin;
    } else {
        out << hmin << ".." << hmax;
    }
    out << '\n';
}

// Points of one series per alpha, in first-seen order.
std::vector<ScatterSeries> series_by_alpha(const std::vector<RunRecord>& runs, bool use_post) {
    std::vector<ScatterSeries> series;
    std::map<Rational, std::size_t> index;
    for (const auto& r : runs) {
        const bool post = use_post && r.ell_post;
        const PlotPoint p{to_double(post ? *r.s_post : r.s), static_cast<double>(post ? *r.ell_post : r.ell)};
        auto [it, fresh] = index.try_emplace(r.alpha, series.size());
        if (fresh) {
            series.push_back({"alpha=" + format_rational(r.alpha), {}});
        }
        series[it->second].points.push_back(p);
    }
    return series;
}

std::vector<PlotPoint> boundary_points(const ParetoFront& front) {
    std::vector<PlotPoint> out;
    for (const auto& [ell, s] : front.pairs()) {
        out.emplace_back(to_double(s), static_cast<double>(ell));
    }
    return out;
}

// Runs that strictly dominate a point of the front; any such run contradicts the boundary.
std::vector<RunRecord> front_violations(const std::vector<RunRecord>& runs, const ParetoFront& front,
                                        bool use_post) {
    std::vector<RunRecord> bad;
    for (const auto& r : runs) {
        const bool post = use_post && r.ell_post;
        const LengthSatisfactionPoint p{post ? *r.ell_post : r.ell, post ? *r.s_post : r.s, {}};
        if (std::ranges::any_of(front.points(), [&](const auto& b) { return dominates(p, b); })) {
            bad.push_back(r);
        }
    }
    return bad;
}

// gen ----------------------------------------------------------------------

struct GenOptions {
    bool uniform = false;
    bool biased = false;
    std::vector<std::string> params;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenOptions& o) {
    if (o.uniform == o.biased) {
        throw UsageError("gen needs exactly one of --uniform or --biased");
    }
    const auto spec = GeneratorSpec::parse(o.uniform ? GeneratorSpec::Kind::Uniform : GeneratorSpec::Kind::Biased,
                                           o.params);
    const auto inst = spec.make(o.seed);
    if (o.out.empty()) {
        std::cout << to_instance_json(inst);
        print_summary(std::cerr, inst);
    } else {
        save_instance(inst, o.out);
        print_summary(std::cout, inst);
    }
    return exit_ok;
}

// solve --------------------------------------------------------------------

struct SolveOptions {
    std::string instance;
    std::vector<std::string> alphas;
    std::string eta = "rowmax";
    std::vector<std::uint64_t> seeds;
    bool post = false;
    bool check = false;
    std::string out;
    std::string code_out;
};

int cmd_solve(const SolveOptions& o) {
    const auto inst = load_instance(o.instance);
    const auto alphas = parse_alphas(o.alphas);
    if (alphas.empty()) {
        throw UsageError("solve needs at least one --alpha");
    }
    const auto seeds = o.seeds.empty() ? std::vector<std::uint64_t>{0} : o.seeds;
    if (!o.code_out.empty() && alphas.size() * seeds.size() != 1) {
        throw UsageError("--code-out needs exactly one alpha and one seed");
    }
    const auto eta_spec = EtaSpec::parse(o.eta);
    const auto eta = eta_spec.resolve(inst);

    std::vector<RunRecord> records;
    bool all_valid = true;
    for (const auto& alpha : alphas) {
        for (const auto seed : seeds) {
            const auto raw = prgrcov(inst, {alpha, eta, seed});
            std::optional<GreedyResult> post;
            if (o.post) {
                post = postprocess(raw, inst);
            }
            if (o.check) {
                const auto verify = [&](const GreedyResult& r, const char* label) {
                    const bool ok = audit(r, inst) && decodability(r.code.matrix, inst).all_satisfied();
                    if (!ok) {
                        std::cerr << "check failed: alpha=" << format_rational(alpha) << " seed=" << seed << " ("
                                  << label << ")\n";
                    }
                    return ok;
                };
                all_valid = verify(raw, "raw") && all_valid;
                if (post) {
                    all_valid = verify(*post, "post") && all_valid;
                }
            }
            if (!o.code_out.empty()) {
                auto out = open_out(o.code_out);
                out << to_code_json((post ? *post : raw).code.matrix);
            }
            records.push_back(make_record(raw, post ? &*post : nullptr, seed, alpha, eta_spec.text()));
        }
    }

    if (o.out.empty()) {
        write_run_header(std::cout);
        for (const auto& r : records) {
            write_run_row(std::cout, r);
        }
    } else {
        const bool fresh = !fs::exists(o.out) || fs::file_size(o.out) == 0;
        auto out = open_out(o.out, std::ios::app);
        if (fresh) {
            write_run_header(out);
        }
        for (const auto& r : records) {
            write_run_row(out, r);
        }
        std::cout << records.size() << " run(s) appended to " << o.out << '\n';
    }
    if (o.check) {
        std::cerr << (all_valid ? "check: all decodes confirmed\n" : "check: FAILED\n");
    }
    return all_valid ? exit_ok : exit_invalid;
}

// boundary -----------------------------------------------------------------

struct BoundaryOptions {
    std::string instance;
    int method = 2;
    std::uint64_t budget = 10'000'000;
    std::size_t threads = 1;
    std::size_t witnesses = 16;
    std::string out;
    std::string raw;
};

int cmd_boundary(const BoundaryOptions& o) {
    const auto inst = load_instance(o.instance);
    Budgets b;
    b.max_matrices = b.max_choices = b.max_fittings = o.budget;
    b.threads = o.threads;
    b.witness_limit = o.witnesses;
    const auto result = o.method == 1 ? method1_boundary(inst, b) : method2_boundary(inst, b);

    std::ostream& info = o.out.empty() ? std::cerr : std::cout;
    if (o.method == 2) {
        info << "method 2: " << result.enumerated << " nonzero subspaces enumerated, " << result.unsatisfied
             << " leave a receiver unsatisfied\n";
    } else {
        info << "method 1: " << result.enumerated << " decoding choices, " << result.fittings
             << " fitting matrices ranked\n";
    }
    info << "front:";
    for (const auto& [ell, s] : result.front.pairs()) {
        info << " (" << ell << ", " << format_rational(s) << ")";
    }
    info << '\n';

    if (o.out.empty()) {
        write_boundary_csv(std::cout, result.front);
    } else {
        auto out = open_out(o.out);
        write_boundary_csv(out, result.front);
    }
    if (!o.raw.empty()) {
        auto out = open_out(o.raw);
        csv::write_row(out, {"ell", "s_num", "s_den"});
        for (const auto& [ell, s] : result.raw) {
            csv::write_row(out, {std::to_string(ell), std::to_string(s.numerator()), std::to_string(s.denominator())});
        }
    }
    return exit_ok;
}

// sweep --------------------------------------------------------------------

struct SweepOptions {
    std::string instance;
    bool uniform = false;
    bool biased = false;
    std::vector<std::string> params;
    std::size_t instances = 1;
    std::vector<std::string> alphas;
    std::string eta = "3";
    std::optional<std::uint64_t> seed;
    std::size_t repetitions = 1;
    bool post = false;
    std::size_t threads = 1;
    std::string out;
    std::string points;
    std::string svg;
    std::string boundary;
    bool check_front = false;
};

int cmd_sweep(const SweepOptions& o) {
    if (!o.seed) {
        throw UsageError("sweep needs --seed");
    }
    if (!o.instance.empty() && (o.uniform || o.biased)) {
        throw UsageError("--instance cannot be combined with a generator");
    }
    if (o.uniform && o.biased) {
        throw UsageError("choose one of --uniform or --biased");
    }
    SweepConfig config;
    if (!o.instance.empty()) {
        config.instance = o.instance;
    } else {
        config.generator =
            GeneratorSpec::parse(o.biased ? GeneratorSpec::Kind::Biased : GeneratorSpec::Kind::Uniform, o.params);
    }
    config.instances = o.instances;
    config.alphas = parse_alphas(o.alphas);
    if (config.alphas.empty()) {
        throw UsageError("sweep needs at least one alpha");
    }
    config.eta = EtaSpec::parse(o.eta);
    config.seed = *o.seed;
    config.repetitions = o.repetitions;
    config.post = o.post;
    config.threads = o.threads;

    std::optional<ParetoFront> front;
    if (!o.boundary.empty()) {
        if (!fs::exists(o.boundary)) {
            throw UsageError("boundary file " + o.boundary + " does not exist");
        }
        auto in = open_in(o.boundary);
        front = read_front_pairs(in);
    }
    if (o.check_front && !front) {
        throw UsageError("--check-front needs --boundary");
    }

    const auto result = run_sweep(config);

    if (o.out.empty()) {
        write_summary_csv(std::cout, result.summary);
    } else {
        auto out = open_out(o.out);
        write_summary_csv(out, result.summary);
    }
    std::vector<RunRecord> runs;
    for (const auto& p : result.points) {
        runs.push_back(p.record);
    }
    if (!o.points.empty()) {
        auto out = open_out(o.points);
        write_run_header(out);
        for (const auto& r : runs) {
            write_run_row(out, r);
        }
    }
    if (!o.svg.empty()) {
        PlotSpec spec;
        spec.title = config.instance ? "sweep on " + fs::path(o.instance).filename().string()
                                     : "sweep over " + std::to_string(config.instances) + " " +
                                           config.generator.describe() + " instances";
        spec.series = series_by_alpha(runs, o.post);
        if (front) {
            spec.boundary = boundary_points(*front);
        }
        auto out = open_out(o.svg);
        out << render_scatter_svg(spec);
    }
    if (o.check_front) {
        const auto bad = front_violations(runs, *front, o.post);
        for (const auto& r : bad) {
            std::cerr << "run alpha=" << format_rational(r.alpha) << " seed=" << r.seed
                      << " strictly dominates a boundary point\n";
        }
        if (!bad.empty()) {
            return exit_invalid;
        }
        std::cerr << "front check: " << runs.size() << " run(s) on or above the boundary\n";
    }
    return exit_ok;
}

// check --------------------------------------------------------------------

struct CheckOptions {
    std::string instance;
    std::string code;
};

int cmd_check(const CheckOptions& o) {
    const auto inst = load_instance(o.instance);
    const auto a = load_code(o.code, inst.field(), inst.messages());
    const auto report = decodability(a, inst);
    for (std::size_t i = 0; i < inst.receivers(); ++i) {
        const auto& r = report.receivers[i];
        std::cout << "receiver " << i + 1 << ": decodes " << message_list(r.decodable);
        if (r.best_message) {
            std::cout << ", best message " << *r.best_message + 1 << " (rank " << rank_text(r.best_rank) << ")\n";
        } else {
            std::cout << ", UNSATISFIED\n";
        }
    }
    const auto eval = evaluate_code(a, inst, LengthMode::Rows);
    std::cout << "rows=" << a.rows() << " rank=" << rank(a) << '\n';
    if (!eval) {
        std::cout << "some receiver decodes nothing\n";
        return exit_invalid;
    }
    std::cout << "(ell, s) = (" << eval->point.ell << ", " << format_rational(eval->point.s) << ")\n";
    return exit_ok;
}

// plot ---------------------------------------------------------------------

struct PlotOptions {
    std::vector<std::string> runs;
    std::string front;
    std::string out;
    std::string title = "code length vs satisfaction";
    bool post = false;
};

int cmd_plot(const PlotOptions& o) {
    std::vector<RunRecord> runs;
    for (const auto& path : o.runs) {
        auto in = open_in(path);
        auto part = read_runs_csv(in);
        runs.insert(runs.end(), part.begin(), part.end());
    }
    PlotSpec spec;
    spec.title = o.title;
    spec.series = series_by_alpha(runs, o.post);
    if (!o.front.empty()) {
        auto in = open_in(o.front);
        spec.boundary = boundary_points(read_front_pairs(in));
    }
    const auto svg = render_scatter_svg(spec);
    if (o.out.empty()) {
        std::cout << svg;
    } else {
        auto out = open_out(o.out);
        out << svg;
    }
    return exit_ok;
}

// Splices `sweep --config FILE` entries into the arguments as ordinary options.
// Options given on the command line win over the file.
std::vector<std::string> with_config_file(std::vector<std::string> args) {
    if (args.empty() || args[0] != "sweep") {
        return args;
    }
    std::optional<std::string> path;
    std::set<std::string> given;
    for (std::size_t k = 1; k < args.size(); ++k) {
        const auto& a = args[k];
        if (a == "--config" && k + 1 < args.size()) {
            path = args[k + 1];
        } else if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
        } else if (a.rfind("--", 0) == 0) {
            given.insert(a.substr(0, a.find('=')));
        }
    }
    if (!path) {
        return args;
    }
    std::vector<std::string> extra;
    for (const auto& item : CLI::ConfigTOML().from_file(*path)) {
        if (item.name == "++" || item.name == "--") {
            continue;  // section markers
        }
        if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == "sweep")) {
            throw UsageError("config section '" + item.parents[0] + "' does not apply to sweep");
        }
        const auto flag = "--" + item.name;
        if (item.name == "config" || given.contains(flag)) {
            continue;
        }
        if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
            if (item.inputs[0] == "true") {
                extra.push_back(flag);
            }
            continue;
        }
        extra.push_back(flag);
        extra.insert(extra.end(), item.inputs.begin(), item.inputs.end());
    }
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pliable index coding with preferences: greedy codes and exact Pareto boundaries", "ppicod"};
    app.require_subcommand(1);
    int status = exit_ok;

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Generate a random instance");
    g->add_flag("--uniform", gen.uniform, "Uniform side information and ranks 1..m-h");
    g->add_flag("--biased", gen.biased, "Two receiver groups with biased preferences (m = 8)");
    g->add_option("params", gen.params, "Overrides m=.. n=.. h=.. q=..");
    g->add_option("--seed", gen.seed, "Generator seed")->required();
    g->add_option("-o,--output", gen.out, "Instance file (default: stdout)");
    g->callback([&] { status = cmd_gen(gen); });

    SolveOptions solve;
    auto* s = app.add_subcommand("solve", "Run the greedy cover on an instance");
    s->add_option("instance", solve.instance, "Instance file")->required()->check(CLI::ExistingFile);
    s->add_option("--alpha", solve.alphas, "Trade-off weights in [0,1]; repeat or comma-separate")->required();
    s->add_option("--eta", solve.eta, "Thresholds: scalar, list, min or rowmax")->capture_default_str();
    s->add_option("--seed", solve.seeds, "Greedy seeds (default 0)");
    s->add_flag("--post", solve.post, "Also post-process each code");
    s->add_flag("--check", solve.check, "Re-verify every decode with the oracle");
    s->add_option("-o,--output", solve.out, "Run CSV to append to (default: stdout)");
    s->add_option("--code-out", solve.code_out, "Write the code matrix as JSON (single run only)");
    s->callback([&] { status = cmd_solve(solve); });

    BoundaryOptions boundary;
    auto* b = app.add_subcommand("boundary", "Exhaustive Pareto boundary");
    b->add_option("instance", boundary.instance, "Instance file")->required()->check(CLI::ExistingFile);
    b->add_option("--method", boundary.method, "1 = decoding-centric, 2 = code-centric")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    b->add_option("--budget", boundary.budget, "Maximum objects enumerated")->capture_default_str();
    b->add_option("--threads", boundary.threads, "Worker threads (0 = all cores)")->capture_default_str();
    b->add_option("--witnesses", boundary.witnesses, "Witnesses kept per point (0 = all)")->capture_default_str();
    b->add_option("-o,--output", boundary.out, "Front CSV (default: stdout)");
    b->add_option("--raw", boundary.raw, "CSV of every achievable pair");
    b->callback([&] { status = cmd_boundary(boundary); });

    SweepOptions sweep;
    auto* w = app.add_subcommand("sweep", "Greedy runs over alphas, seeds and instances");
    std::string sweep_config;
    w->add_option("--config", sweep_config, "TOML/INI file with sweep options; command-line options take precedence");
    w->add_option("--instance", sweep.instance, "Fixed instance file")->check(CLI::ExistingFile);
    w->add_flag("--uniform", sweep.uniform, "Generate uniform instances (default)");
    w->add_flag("--biased", sweep.biased, "Generate group-biased instances");
    w->add_option("--gen", sweep.params, "Generator overrides m=.. n=.. h=.. q=.. (default m=8 n=20 h=3 q=2)");
    w->add_option("--instances", sweep.instances, "Generated instances")->capture_default_str();
    w->add_option("--alpha", sweep.alphas, "Trade-off weights; repeat or comma-separate");
    w->add_option("--eta", sweep.eta, "Thresholds: scalar, list, min or rowmax")->capture_default_str();
    w->add_option("--seed", sweep.seed, "Base seed (required)");
    w->add_option("--repetitions", sweep.repetitions, "Greedy seeds per instance and alpha")->capture_default_str();
    w->add_flag("--post", sweep.post, "Post-process codes; plots and checks use post-processed points");
    w->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)")->capture_default_str();
    w->add_option("-o,--output", sweep.out, "Per-alpha summary CSV (default: stdout)");
    w->add_option("--points", sweep.points, "Run CSV of every point");
    w->add_option("--svg", sweep.svg, "Scatter plot");
    w->add_option("--boundary", sweep.boundary, "Front CSV to overlay");
    w->add_flag("--check-front", sweep.check_front, "Fail if a point strictly dominates the boundary");
    w->callback([&] { status = cmd_sweep(sweep); });

    CheckOptions check;
    auto* c = app.add_subcommand("check", "Audit a code against an instance");
    c->add_option("instance", check.instance, "Instance file")->required()->check(CLI::ExistingFile);
    c->add_option("code", check.code, "Code file (JSON or text rows)")->required()->check(CLI::ExistingFile);
    c->callback([&] { status = cmd_check(check); });

    PlotOptions plot;
    auto* p = app.add_subcommand("plot", "Render run and front CSVs as SVG");
    p->add_option("--runs", plot.runs, "Run CSV files");
    p->add_option("--front", plot.front, "Front CSV")->check(CLI::ExistingFile);
    p->add_option("-o,--output", plot.out, "SVG file (default: stdout)");
    p->add_option("--title", plot.title, "Plot title");
    p->add_flag("--post", plot.post, "Plot post-processed columns where present");
    p->callback([&] { status = cmd_plot(plot); });

    try {
        auto args = with_config_file(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_budget;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: infeasible thresholds: " << e.what() << '\n';
        return exit_usage;
    } catch (const InstanceError& e) {
        std::cerr << "error: invalid instance: " << e.what() << '\n';
        return exit_invalid;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const csv::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return status;
}
