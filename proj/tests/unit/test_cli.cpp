#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = ranklab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return (std::filesystem::path(RANKLAB_TEST_DATA_DIR) / name).string(); }

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("rankvec") {
    const auto r = run({"rankvec", "--named", "psi2"});
    CHECK(r.code == 0);
    CHECK(has(r.out, "(3,3,3,3,9,9,9)"));
    CHECK(has(r.out, "log2(9)"));
    CHECK(has(run({"rankvec", "--named", "psi3", "--d", "3"}).out, "(4,4,4,4,2,6,6)"));
    CHECK(has(run({"rankvec", "--named", "psi1", "--renyi", "2"}).out, "S2~"));
    CHECK(has(run({"rankvec", "--named", "psi1", "--format", "tsv"}).out, "rank\t2\t2\t1\t1\t1\t2\t2"));
    CHECK(has(run({"rankvec", "--named", "psi1", "--format", "json"}).out, "\"ranks\""));
    CHECK(run({"rankvec", "--named", "psi1"}).out == run({"rankvec", "--named", "psi1"}).out);

    const auto path = std::filesystem::temp_directory_path() / ("ranklab_cli_" + std::to_string(::getpid()) + ".state");
    std::ofstream(path) << "2 2\n0 0 1 0\n1 1 1 0\n";
    CHECK(has(run({"rankvec", path.string()}).out, "(2)"));
    std::filesystem::remove(path);

    CHECK(run({"rankvec", "/nonexistent.state"}).code == 2);
    CHECK(run({"rankvec", "--named", "psi9"}).code == 2);
    CHECK(run({"rankvec", "--named", "psi1", "--format", "xml"}).code == 2);
    CHECK(run({"rankvec"}).code == 2);
}

TEST_CASE("audit") {
    const auto ssa = run({"audit", "--named", "ssa_cx", "--ineq", data("ssa0.txt")});
    CHECK(ssa.code == 1);
    CHECK(has(ssa.out, "9 < 10"));
    CHECK(run({"audit", "--named", "ssa_cx"}).code == 0);
    CHECK(run({"audit", "--named", "psi3", "--d", "5", "--include-conjectured"}).code == 1);
    CHECK(run({"audit", "--named", "psi3", "--d", "4", "--include-conjectured"}).code == 0);
    CHECK(run({"audit", "--named", "psi6", "--d", "2", "--include-hypothesis"}).code == 0);
    CHECK(run({"audit", "--named", "phi_plus", "--d", "2"}).code == 2);
    CHECK(has(run({"audit", "--named", "psi1", "--format", "json"}).out, "\"verdicts\""));
}

TEST_CASE("cone commands") {
    const auto rays = run({"rays", data("known4.h")});
    CHECK(rays.code == 0);
    CHECK(has(rays.out, "7 50"));
    CHECK(run({"rays", data("known4.h"), "--algebraic"}).out == rays.out);
    CHECK(has(run({"rays", data("known4.h"), "--families"}).out, "family"));
    const auto f = run({"facets", data("attained.v")});
    CHECK(f.code == 0);
    CHECK(has(f.out, "7 25"));
    const auto g = run({"gap", data("known4.h"), data("attained.v")});
    CHECK(g.code == 0);
    CHECK(has(g.out, "7 3"));
    CHECK(run({"rays", "/nonexistent.h"}).code == 2);
    CHECK(run({"gap", data("attained.v"), data("known4.h")}).code == 2);
}

TEST_CASE("hunt") {
    const auto ex = run({"hunt", "--K", "2", "--shape", "2x2,2x2", "--field", "2"});
    CHECK(ex.code == 0);
    CHECK(has(ex.out, "examined\t13056"));
    CHECK(has(ex.out, "counterexamples\t0"));
    const auto rnd = run({"hunt", "--K", "2", "--shape", "2x2,2x2", "--rational-bound", "2", "--samples", "500",
                          "--seed", "3", "--workers", "3"});
    CHECK(rnd.code == 0);
    CHECK(rnd.out == run({"hunt", "--K", "2", "--shape", "2x2,2x2", "--rational-bound", "2", "--samples", "500",
                          "--seed", "3"})
                         .out);
    CHECK(run({"hunt", "--K", "3", "--shape", "2x2,2x2", "--field", "3"}).code == 2);
    CHECK(run({"hunt", "--K", "2", "--shape", "2x2", "--field", "2"}).code == 2);
    CHECK(run({"hunt", "--K", "2", "--shape", "2x2,2x2", "--field", "4"}).code == 2);
    CHECK(run({"hunt", "--K", "2", "--shape", "2x2,2x2"}).code == 2);
}

TEST_CASE("classical") {
    const auto c = run({"classical", data("parity.support")});
    CHECK(c.code == 0);
    CHECK(has(c.out, "s_123\t4"));
    CHECK(run({"classical", "/nonexistent.support"}).code == 2);
}

TEST_CASE("reproduce every table") {
    for (const auto& name : ranklab::cli::table_names()) {
        CAPTURE(name);
        const auto r = run({"reproduce", name, "--golden-dir", data("golden")});
        CHECK(r.code == 0);
        CHECK(r.out == read_file(std::filesystem::path(data("golden")) / (name + ".tsv")));
        CHECK(ranklab::cli::generate_table(name) == r.out);
    }
    const auto rt = run({"reproduce", "ray-table"});
    CHECK(rt.code == 0);
    std::size_t families = 0;
    std::istringstream in(rt.out);
    for (std::string line; std::getline(in, line);)
        families += !line.empty() && line[0] != '#' && !line.starts_with("family");
    CHECK(families == 8);
    CHECK(run({"reproduce", "no-such-table"}).code == 2);
    CHECK(run({"reproduce", "ray-table", "--golden-dir", "/nonexistent"}).code == 2);
}

TEST_CASE("usage") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
