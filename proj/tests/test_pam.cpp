#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "bsdomino/pam.hpp"
#include "bsdomino/sampling.hpp"
#include "test_util.hpp"

using namespace bsdomino;
using namespace testutil;

TEST_SUITE("pam") {

TEST_CASE("piece lookup") {
    auto f = identity_map();
    CHECK(f.locate_piece(v("1/2", "1/2")) == 0u);
    CHECK_FALSE(f.locate_piece(v("2", "2")).has_value());
    // Outer upper/right boundary belongs to the square itself.
    CHECK(f.locate_piece(v("1", "1")) == 0u);
    CHECK(f.locate_piece(v("0", "1")) == 0u);

    PiecewiseAffineMap g({piece(0, 0), piece(1, 0)});
    // Shared edge x1 = 1: the right square owns its left edge.
    CHECK(g.locate_piece(v("1", "1/2")) == 1u);
    CHECK(g.locate_piece(v("2", "1/2")) == 1u);
    CHECK(g.locate_piece(v("0", "0")) == 0u);
    CHECK_FALSE(g.locate_piece(v("-1/2", "1/2")).has_value());
}

TEST_CASE("lookup on a 2x2 block") {
    auto f = rotation_map();
    CHECK(f.locate_piece(v("0", "0")) == 0u);
    CHECK(f.locate_piece(v("-1", "-1")) == 2u);
    CHECK(f.locate_piece(v("-1/2", "0")) == 1u);
    CHECK(f.locate_piece(v("0", "-1/2")) == 3u);
    CHECK(f.locate_piece(v("1", "1")) == 0u);
    CHECK(f.locate_piece(v("-1", "1")) == 1u);
}

TEST_CASE("evaluate") {
    CHECK(identity_map().evaluate(v("1/3", "2/3")) == v("1/3", "2/3"));
    PiecewiseAffineMap swap({piece(0, 0, Mat2{Rat(0), Rat(1), Rat(1), Rat(0)})});
    CHECK(swap.evaluate(v("1/4", "1/2")) == v("1/2", "1/4"));
    CHECK(escape_map().evaluate(v("0", "0")) == v("2", "2"));
    CHECK_THROWS_AS(identity_map().evaluate(v("3", "0")), OutsideDomain);
}

TEST_CASE("invalid maps") {
    CHECK_THROWS_AS(PiecewiseAffineMap({}), InvalidMap);
    try {
        PiecewiseAffineMap({piece(0, 0), piece(1, 0), piece(0, 0)});
        FAIL("expected InvalidMap");
    } catch (const InvalidMap& e) {
        REQUIRE(e.squares().size() == 1);
        CHECK(e.squares()[0] == iv(0, 0));
        CHECK(std::string(e.what()).find("(0,0)") != std::string::npos);
    }
}

TEST_CASE("orbits") {
    auto fixed = orbit(identity_map(), v("1/2", "1/2"), 10);
    CHECK(fixed.outcome == OrbitReport::Outcome::CycleDetected);
    CHECK(fixed.cycle_from == 0);
    CHECK(fixed.cycle_to == 1);
    CHECK(fixed.state_at(1000)->point == v("1/2", "1/2"));

    auto gone = orbit(escape_map(), v("0", "0"), 10);
    CHECK(gone.outcome == OrbitReport::Outcome::EscapedAfter);
    CHECK(gone.steps == 1);
    CHECK(gone.states.size() == 1);
    CHECK_FALSE(gone.state_at(1).has_value());

    auto rot = orbit(rotation_map(), v("1/2", "1/2"), 8);
    CHECK(rot.outcome == OrbitReport::Outcome::CycleDetected);
    CHECK(rot.cycle_to - rot.cycle_from == 4);
    CHECK(rot.state_at(6)->point == v("-1/2", "-1/2"));

    // A contraction toward 1/2 never repeats exactly from a generic start.
    PiecewiseAffineMap half({piece(0, 0, Mat2{q("1/2"), Rat(0), Rat(0), q("1/2")}, v("1/4", "1/4"))});
    auto alive = orbit(half, v("0", "1"), 12);
    CHECK(alive.outcome == OrbitReport::Outcome::AliveUpTo);
    CHECK(alive.steps == 12);
    CHECK(alive.states.size() == 13);

    CHECK_THROWS_AS(orbit(identity_map(), v("5", "5"), 3), OutsideDomain);
}

TEST_CASE("orbit states are exact and runs are deterministic") {
    Rng rng(21);
    PiecewiseAffineMap f({piece(0, 0, Mat2{q("2/3"), q("1/5"), q("-1/7"), q("1/2")}, v("1/9", "3/11")),
                          piece(1, 0, Mat2{q("1/3"), Rat(0), Rat(0), q("3/4")}, v("-1", "1/8"))});
    for (int i = 0; i < 50; ++i) {
        const auto& pc = f.piece(i % 2);
        RatVec2 x = random_point(rng, pc);
        auto a = orbit(f, x, 40), b = orbit(f, x, 40);
        REQUIRE(a == b);
        REQUIRE(a.summary() == b.summary());
        for (std::size_t k = 0; k + 1 < a.states.size(); ++k)
            REQUIRE(f.evaluate(a.states[k].point) == a.states[k + 1].point);
        for (const auto& s : a.states) REQUIRE(RatVec2::parse(s.point.str()) == s.point);
    }
}

TEST_CASE("map spec files") {
    MapSpec spec = parse_map_spec(
        R"({"m":2,"n":3,"pieces":[{"square":[0,0],"M":[["1","0"],["0","1"]],"b":["0","0"]}]})");
    CHECK(spec.params == BsParams(2, 3));
    CHECK(spec.map.size() == 1);
    CHECK(spec.map.piece(0).M == Mat2::identity());
    MapSpec again = parse_map_spec(dump_map_spec(spec));
    CHECK(again.params == spec.params);
    CHECK(again.map.piece(0).b == spec.map.piece(0).b);

    MapSpec ints = parse_map_spec(R"({"m":1,"n":2,"pieces":[{"square":[1,-1],"M":[[1,"1/2"],[0,1]],"b":[2,"-3/4"]}]})");
    CHECK(ints.map.piece(0).corner == iv(1, -1));
    CHECK(ints.map.piece(0).M.a12 == q("1/2"));
    CHECK(ints.map.piece(0).b == v("2", "-3/4"));

    CHECK_THROWS_AS(parse_map_spec(R"({"m":2,"n":3,"pieces":[]})"), InvalidMap);
    CHECK_THROWS(parse_map_spec(R"({"m":2,"n":3,"pieces":[{"square":[0,0],"M":[["1"]],"b":["0","0"]}]})"));
    CHECK_THROWS(parse_map_spec("{not json"));
    CHECK_THROWS(parse_map_spec(R"({"m":0,"n":3,"pieces":[{"square":[0,0],"M":[["1","0"],["0","1"]],"b":["0","0"]}]})"));

    for (const char* name : {"identity-23.map", "escape.map", "rotation-11.map", "half-shift-32.map"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_map_spec(std::filesystem::path(maps_dir()) / name));
    }
}

}
