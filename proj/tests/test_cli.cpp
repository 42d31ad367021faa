#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsdomino/cli.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "bsdomino");
    std::ostringstream out, err;
    int code = bsdomino::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string map_path(const char* name) { return (fs::path(testutil::maps_dir()) / name).string(); }

fs::path scratch(const char* name) {
    fs::path dir = fs::temp_directory_path() / "bsdomino-cli-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("phi") {
    auto r = run({"phi", "--mn", "3,2", "taT a2 t A T A-2"});
    CHECK(r.code == 0);
    CHECK(r.out == "(0/1, 0)\n");
    CHECK(run({"phi", "--mn", "2,3", ""}).out == "(0/1, 0)\n");
    CHECK(run({"phi", "--mn", "2,3", "ta"}).out == "(2/3, -1)\n");

    auto bad = run({"phi", "--mn", "2,3", "taq"});
    CHECK(bad.code == 3);
    CHECK(bad.err.find("position 2") != std::string::npos);
    CHECK(run({"phi", "ta"}).code == 3);
    CHECK(run({"phi", "--mn", "0,3", "ta"}).code == 3);
    CHECK(run({"phi", "--mn", "2", "ta"}).code == 3);
    CHECK(run({}).code == 3);
}

TEST_CASE("compile, verify and round trip") {
    fs::path out = scratch("identity.ts");
    auto c = run({"compile", map_path("identity-23.map"), "--out", out.string()});
    REQUIRE(c.code == 0);
    CHECK(c.out.rfind("m=2 n=3 pieces=1 tiles=", 0) == 0);
    CHECK(c.out.find("tiles=0") == std::string::npos);
    const std::string text = slurp(out);
    CHECK(text.find("\nm=2 n=3\n") != std::string::npos);

    auto v = run({"verify", out.string()});
    CHECK(v.code == 0);
    CHECK(v.out.rfind("ok ", 0) == 0);

    // Stdout export is the same bytes as the file.
    CHECK(run({"compile", map_path("identity-23.map")}).out == text);

    // Perturb the right color of tile 7 (tile lines start with the piece index).
    std::istringstream lines(text);
    std::ostringstream corrupted;
    std::string line;
    bool done = false, in_tiles = false;
    int tile = -1;
    while (std::getline(lines, line)) {
        if (in_tiles) ++tile;
        if (line.rfind("tiles=", 0) == 0) in_tiles = true;
        if (tile == 7) {
            auto pos = line.find("| r: ");
            line = line.substr(0, pos) + "| r: 5/7,0/1";
            done = true;
        }
        corrupted << line << "\n";
    }
    REQUIRE(done);
    fs::path bad = scratch("corrupted.ts");
    std::ofstream(bad) << corrupted.str();
    auto vb = run({"verify", bad.string()});
    CHECK(vb.code == 1);
    CHECK(vb.out.find("FAIL tile 7:") != std::string::npos);
    CHECK(vb.out.find("bad=1") != std::string::npos);

    CHECK(run({"verify", scratch("missing.ts").string()}).code == 3);
}

TEST_CASE("compile honours the enumeration cap") {
    ::setenv("BSDOMINO_MAX_TILES", "10", 1);
    auto r = run({"compile", map_path("identity-23.map")});
    ::unsetenv("BSDOMINO_MAX_TILES");
    CHECK(r.code == 2);
    CHECK(r.err.find("BSDOMINO_MAX_TILES") != std::string::npos);
}

TEST_CASE("mn override") {
    auto r = run({"compile", map_path("identity-23.map"), "--mn", "1,2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\nm=1 n=2\n") != std::string::npos);
}

TEST_CASE("orbit") {
    auto r = run({"orbit", map_path("rotation-11.map"), "--x", "1/2,1/3", "--horizon", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("period=4") != std::string::npos);
    auto e = run({"orbit", map_path("escape.map"), "--x", "0,0", "--horizon", "10"});
    CHECK(e.out.find("escaped_after=1") != std::string::npos);
    CHECK(run({"orbit", map_path("escape.map"), "--x", "9,9"}).code == 3);
    CHECK(run({"orbit", map_path("escape.map"), "--x", "1/2"}).code == 3);
}

TEST_CASE("simulate-row") {
    auto r = run({"simulate-row", map_path("identity-23.map"), "--x", "1/2,1/2", "--from", "0", "--to", "9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tiles=10 bottom-window=match top-window=match") != std::string::npos);
    auto g = run({"simulate-row", map_path("half-shift-32.map"), "--x", "1/3,2/5", "--g0", "tA", "--from", "-5",
                  "--to", "5"});
    CHECK(g.code == 0);
    CHECK(g.out.find("tiles=11 bottom-window=match top-window=match") != std::string::npos);
}

TEST_CASE("search exit codes") {
    auto found = run({"search", map_path("identity-23.map"), "--radius", "2", "--budget", "100000"});
    CHECK(found.code == 0);
    CHECK(found.out.rfind("status=found", 0) == 0);
    auto none = run({"search", map_path("escape.map"), "--radius", "2"});
    CHECK(none.code == 1);
    CHECK(none.out.rfind("status=exhausted-no-tiling", 0) == 0);
    auto budget = run({"search", map_path("identity-23.map"), "--radius", "2", "--budget", "2"});
    CHECK(budget.code == 2);
    CHECK(run({"search", map_path("identity-23.map"), "--radius", "-1"}).code == 3);
    CHECK(run({"search", scratch("nope.map").string()}).code == 3);
}

TEST_CASE("exports are deterministic") {
    auto a = run({"export-tiling", map_path("identity-23.map"), "--radius", "2"});
    auto b = run({"export-tiling", map_path("identity-23.map"), "--radius", "2"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("1 -> ", 0) == 0);
    auto d = run({"export-dot", map_path("identity-23.map"), "--radius", "1"});
    CHECK(d.code == 0);
    CHECK(d.out.rfind("graph patch {", 0) == 0);
    CHECK(d.out == run({"export-dot", map_path("identity-23.map"), "--radius", "1"}).out);
    CHECK(run({"export-tiling", map_path("escape.map"), "--radius", "1"}).code == 1);
}

TEST_CASE("seeded checks") {
    auto a = run({"check", map_path("half-shift-32.map"), "--seed", "7", "--samples", "300"});
    auto b = run({"check", map_path("half-shift-32.map"), "--seed", "7", "--samples", "300"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find(" ok") != std::string::npos);
}

}
