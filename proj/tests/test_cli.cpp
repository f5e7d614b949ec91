// Runs the command-line tool end to end. PPICOD_CLI is the path of the built binary.

#include "ppicod/harness.hpp"
#include "ppicod/oracle.hpp"

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using namespace ppicod;

namespace {

struct Workdir {
    fs::path path;

    Workdir() : path(fs::temp_directory_path() / ("ppicod_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~Workdir() { fs::remove_all(path); }

    [[nodiscard]] std::string at(const std::string& name) const { return (path / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }

    [[nodiscard]] std::string read(const std::string& name) const {
        std::ifstream in(path / name);
        std::ostringstream out;
        out << in.rdbuf();
        return out.str();
    }
};

struct Outcome {
    int code;
    std::string out;
};

Outcome run(const Workdir& w, const std::string& args) {
    const auto out = w.at("stdout.txt");
    const auto cmd = std::string(PPICOD_CLI) + " " + args + " > " + out + " 2> " + w.at("stderr.txt");
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, w.read("stdout.txt")};
}

const char* example_json = R"({"q":2,"P":[[2,null,1,null,2],[null,1,2,1,null]]})";

}  // namespace

TEST_CASE("gen writes reproducible instances") {
    Workdir w;
    CHECK(run(w, "gen --uniform m=8 n=20 h=3 q=2 --seed 7 -o " + w.at("a.json")).code == 0);
    CHECK(run(w, "gen --uniform m=8 n=20 h=3 q=2 --seed 7 -o " + w.at("b.json")).code == 0);
    CHECK(w.read("a.json") == w.read("b.json"));
    const auto inst = load_instance(w.at("a.json"));
    CHECK(inst.receivers() == 20);
    CHECK(inst.messages() == 8);

    const auto biased = run(w, "gen --biased --seed 7 -o " + w.at("c.json"));
    CHECK(biased.code == 0);
    CHECK(biased.out.find("m=8") != std::string::npos);
    CHECK(load_instance(w.at("c.json")) == gen_group_biased(8, 20, 3, FieldSpec(2), 7));

    CHECK(run(w, "gen --uniform m=4 h=4 --seed 1").code == 2);
    CHECK(run(w, "gen --uniform --biased --seed 1").code == 2);
    CHECK(run(w, "gen --uniform").code == 2);
}

TEST_CASE("solve on the example") {
    Workdir w;
    w.write("ex.json", example_json);
    const auto a = run(w, w.at("ex.json") + " --alpha 1 --eta rowmax --check");
    CHECK(a.code == 2);  // missing subcommand
    const auto b = run(w, "solve " + w.at("ex.json") + " --alpha 1 --eta rowmax --check");
    CHECK(b.code == 0);
    std::istringstream rows(b.out);
    const auto ra = read_runs_csv(rows);
    REQUIRE(ra.size() == 1);
    CHECK(ra[0].ell == 1);
    CHECK(ra[0].s == 3);

    CHECK(run(w, "solve " + w.at("ex.json") + " --alpha 0 --eta 1 --seed 1 2 3 -o " + w.at("runs.csv")).code == 0);
    CHECK(run(w, "solve " + w.at("ex.json") + " --alpha 0.5 --post -o " + w.at("runs.csv")).code == 0);
    std::ifstream in(w.at("runs.csv"));
    const auto runs = read_runs_csv(in);
    REQUIRE(runs.size() == 4);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(runs[k].ell == 2);
        CHECK(runs[k].s == 2);
    }
    CHECK(runs[3].alpha == Rational(1, 2));
    CHECK(runs[3].ell_post.has_value());

    CHECK(run(w, "solve " + w.at("ex.json") + " --alpha 1 --eta 1/2").code == 2);
    CHECK(run(w, "solve " + w.at("ex.json") + " --alpha 2").code == 2);

    CHECK(run(w, "solve " + w.at("ex.json") + " --alpha 1 --code-out " + w.at("code.json")).code == 0);
    CHECK(run(w, "check " + w.at("ex.json") + " " + w.at("code.json")).code == 0);
}

TEST_CASE("check reports decodability") {
    Workdir w;
    w.write("ex.json", example_json);
    w.write("x3.txt", "0 0 1 0 0\n");
    w.write("x2.txt", "0 1 0 0 0\n");
    w.write("id.json", R"({"q":2,"A":[[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],[0,0,0,0,1]]})");
    const auto a = run(w, "check " + w.at("ex.json") + " " + w.at("x3.txt"));
    CHECK(a.code == 0);
    CHECK(a.out.find("(ell, s) = (1, 3)") != std::string::npos);
    const auto b = run(w, "check " + w.at("ex.json") + " " + w.at("x2.txt"));
    CHECK(b.code == 1);
    CHECK(b.out.find("receiver 1: decodes {}, UNSATISFIED") != std::string::npos);
    const auto c = run(w, "check " + w.at("ex.json") + " " + w.at("id.json"));
    CHECK(c.code == 0);
    CHECK(c.out.find("(ell, s) = (5, 2)") != std::string::npos);
    w.write("bad.txt", "0 1 0\n");
    CHECK(run(w, "check " + w.at("ex.json") + " " + w.at("bad.txt")).code == 2);
}

TEST_CASE("boundary by both methods") {
    Workdir w;
    w.write("ex.json", example_json);
    for (const char* method : {"1", "2"}) {
        const auto r = run(w, std::string("boundary ") + w.at("ex.json") + " --method " + method + " -o " +
                                  w.at("front.csv") + " --raw " + w.at("raw.csv"));
        CHECK(r.code == 0);
        std::ifstream in(w.at("front.csv"));
        CHECK(read_front_pairs(in).pairs() == std::vector<Pair>{{1, 3}, {2, 2}});
    }
    CHECK(run(w, "boundary " + w.at("ex.json") + " --method 3").code == 2);

    CHECK(run(w, "gen --uniform --seed 7 -o " + w.at("big.json")).code == 0);
    const auto refused = run(w, "boundary " + w.at("big.json") + " --budget 100");
    CHECK(refused.code == 3);
    CHECK(w.read("stderr.txt").find("417198") != std::string::npos);
    const auto full = run(w, "boundary " + w.at("big.json") + " -o " + w.at("big_front.csv"));
    CHECK(full.code == 0);
    CHECK(full.out.find("417198 nonzero subspaces") != std::string::npos);
}

TEST_CASE("sweep and plot") {
    Workdir w;
    CHECK(run(w, "gen --uniform --seed 7 -o " + w.at("i.json")).code == 0);
    CHECK(run(w, "boundary " + w.at("i.json") + " -o " + w.at("front.csv")).code == 0);
    const auto args = "sweep --instance " + w.at("i.json") +
                      " --alpha 0.05,0.2,0.3,0.5,0.8,1 --eta 3 --seed 11 --repetitions 3 --post --boundary " +
                      w.at("front.csv") + " --check-front --svg " + w.at("a.svg") + " --points " +
                      w.at("pts.csv") + " -o " + w.at("sum.csv");
    CHECK(run(w, args).code == 0);
    const auto first_svg = w.read("a.svg");
    CHECK(run(w, args).code == 0);
    CHECK(w.read("a.svg") == first_svg);
    CHECK(first_svg.find("Pareto boundary") != std::string::npos);
    std::ifstream sum(w.at("sum.csv"));
    CHECK(read_summary_csv(sum).size() == 6);

    CHECK(run(w, "plot --runs " + w.at("pts.csv") + " --front " + w.at("front.csv") + " --post -o " +
                     w.at("b.svg"))
              .code == 0);
    CHECK(w.read("b.svg").find("</svg>") != std::string::npos);

    // A front that claims less than the greedy achieves is flagged.
    w.write("fake.csv", "ell,s_num,s_den,witness_id\n20,1000,1,\n");
    CHECK(run(w, "sweep --instance " + w.at("i.json") + " --alpha 1 --seed 1 --boundary " + w.at("fake.csv") +
                     " --check-front")
              .code == 1);

    CHECK(run(w, "sweep --instance " + w.at("i.json") + " --alpha 1").code == 2);
    CHECK(run(w, "sweep --instance " + w.at("i.json") + " --seed 1").code == 2);
    CHECK(run(w, "sweep --instance " + w.at("i.json") + " --alpha 1 --seed 1 --boundary " + w.at("none.csv"))
              .code == 2);

    w.write("sweep.toml", "gen = [\"m=6\", \"n=5\", \"h=2\"]\ninstances = 4\nalpha = [\"1/20\", \"1\"]\nseed = 3\n");
    const auto cfg = run(w, "sweep --config " + w.at("sweep.toml"));
    CHECK(cfg.code == 0);
    std::istringstream cfg_out(cfg.out);
    const auto s = read_summary_csv(cfg_out);
    REQUIRE(s.size() == 2);
    CHECK(s[0].runs == 4);
}
