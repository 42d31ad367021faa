#include <doctest.h>

#include <sstream>

#include "bsdomino/balrep.hpp"
#include "bsdomino/sampling.hpp"
#include "bsdomino/tileset.hpp"
#include "test_util.hpp"

using namespace bsdomino;
using namespace testutil;

namespace {

const BsParams kParams[] = {{1, 2}, {2, 3}, {3, 2}, {2, 2}, {1, 1}, {3, 4}};

Rat small_rat(Rng& rng, long lo, long hi, long den) {
    long d = std::uniform_int_distribution<long>(1, den)(rng);
    long nm = std::uniform_int_distribution<long>(lo * d, hi * d)(rng);
    return Rat(Int(nm), Int(d));
}

AffinePiece random_piece(Rng& rng) {
    Mat2 M{small_rat(rng, -2, 2, 7), small_rat(rng, -2, 2, 7), small_rat(rng, -2, 2, 7), small_rat(rng, -2, 2, 7)};
    return piece(std::uniform_int_distribution<long>(-3, 3)(rng), std::uniform_int_distribution<long>(-3, 3)(rng), M,
                 {small_rat(rng, -3, 3, 9), small_rat(rng, -3, 3, 9)});
}

Rat random_lambda(Rng& rng) { return small_rat(rng, -20, 20, 24); }

RatVec2 floor_v(const RatVec2& v) { return RatVec2(floor(v)); }
RatVec2 mean(const std::vector<IntVec2>& vs) {
    RatVec2 s;
    for (const auto& x : vs) s += RatVec2(x);
    return Rat(Int(1), Int(static_cast<long>(vs.size()))) * s;
}

// S from the tile, then the successive simplified forms of S; each must
// agree with the first and all must vanish.
std::vector<RatVec2> s_stages(const BsParams& p, const AffinePiece& pc, const Rat& lam, const RatVec2& x) {
    const Rat m(p.m), n(p.n), im = Rat(Int(1), Int(p.m)), in = Rat(Int(1), Int(p.n));
    const RatVec2 fx = pc.apply(x);
    const RatVec2 A = floor_v(n * lam * x);
    const RatVec2 C = floor_v((n * lam + n) * x);
    const RatVec2 D = floor_v(m * lam * fx);
    const RatVec2 E = floor_v((m * lam + m) * fx);
    const Rat up = (lam + q("1/2")).floor(), dn = (lam - q("1/2")).floor();
    const auto f = [&](const RatVec2& y) { return pc.apply(y); };

    Tile t = edge_colors(p, pc, lam, x);
    std::vector<RatVec2> out;
    out.push_back(mean(t.top) + t.right - f(mean(t.bottom)) - t.left);
    out.push_back(im * E - im * D + in * f(C) - im * E + up * pc.b - f(in * C - in * A) - in * f(A) + im * D -
                  dn * pc.b);
    out.push_back(in * f(C) + up * pc.b - f(in * C - in * A) - in * f(A) - dn * pc.b);
    out.push_back(-in * f(A) + up * pc.b - in * f(C) + in * f(A) - pc.b + in * f(C) - dn * pc.b);
    out.push_back(up * pc.b - pc.b - dn * pc.b);
    return out;
}

Tileset identity23() { return enumerate_tileset({2, 3}, identity_map()); }

}  // namespace

TEST_SUITE("tileset") {

TEST_CASE("worked tile for BS(2,3)") {
    Tile t = edge_colors({2, 3}, piece(0, 0), Rat(0), v("1/2", "1/2"));
    CHECK(t.bottom == std::vector<IntVec2>{iv(0, 0), iv(1, 1), iv(0, 0)});
    CHECK(t.top == std::vector<IntVec2>{iv(0, 0), iv(1, 1)});
    CHECK(t.left == v("0", "0"));
    CHECK(t.right == v("-1/6", "-1/6"));
    CHECK(verify_tile_computes({2, 3}, piece(0, 0), t));
    Tile bad = t;
    bad.right = v("0", "0");
    CHECK_FALSE(verify_tile_computes({2, 3}, piece(0, 0), bad));
    bad = t;
    bad.top.pop_back();
    CHECK_FALSE(verify_tile_computes({2, 3}, piece(0, 0), bad));
    CHECK(t.str() == "0 | bottom: (0,0) (1,1) (0,0) | top: (0,0) (1,1) | l: 0/1,0/1 | r: -1/6,-1/6");
}

TEST_CASE("all-zero tile") {
    for (const auto& p : kParams) {
        Tile t = edge_colors(p, piece(0, 0), Rat(0), v("0", "0"));
        CHECK(t.bottom == std::vector<IntVec2>(static_cast<std::size_t>(p.n), iv(0, 0)));
        CHECK(t.top == std::vector<IntVec2>(static_cast<std::size_t>(p.m), iv(0, 0)));
        CHECK(t.left.is_zero());
        CHECK(t.right.is_zero());
    }
}

TEST_CASE("points outside the piece are rejected") {
    CHECK_THROWS_AS(edge_colors({2, 3}, piece(0, 0), Rat(0), v("3/2", "0")), OutsidePiece);
    CHECK_NOTHROW(edge_colors({2, 3}, piece(0, 0), Rat(0), v("1", "1")));
}

TEST_CASE("neighbour tiles at lambda -1/2 and 1/2 stitch") {
    Tile left = edge_colors({2, 3}, piece(0, 0), q("-1/2"), v("1/2", "1/2"));
    Tile right = edge_colors({2, 3}, piece(0, 0), q("1/2"), v("1/2", "1/2"));
    CHECK(right.left == left.right);
}

TEST_CASE("floor half identity") {
    CHECK(floor_half_identity_check(Rat(0)));
    CHECK(floor_half_identity_check(q("1/2")));
    CHECK(floor_half_identity_check(q("-7/3")));
    Rng rng(41);
    for (int i = 0; i < 1000; ++i) REQUIRE(floor_half_identity_check(small_rat(rng, -100, 100, 50)));
}

TEST_CASE("affine identity f(cy - cz) = c f(y) - c f(z) + b") {
    Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        AffinePiece pc = random_piece(rng);
        Rat c = small_rat(rng, -5, 5, 11);
        RatVec2 y{small_rat(rng, -9, 9, 13), small_rat(rng, -9, 9, 13)};
        RatVec2 z{small_rat(rng, -9, 9, 13), small_rat(rng, -9, 9, 13)};
        REQUIRE(pc.apply(c * y - c * z) == c * pc.apply(y) - c * pc.apply(z) + pc.b);
    }
}

TEST_CASE("S simplification chain on random witnesses") {
    Rng rng(43);
    for (const auto& p : kParams)
        for (int i = 0; i < 300; ++i) {
            AffinePiece pc = random_piece(rng);
            auto st = s_stages(p, pc, random_lambda(rng), random_point(rng, pc));
            for (const auto& s : st) REQUIRE(s.is_zero());
        }
}

TEST_CASE("witness tiles compute their piece") {
    Rng rng(44);
    for (const auto& p : kParams)
        for (int i = 0; i < 300; ++i) {
            AffinePiece pc = random_piece(rng);
            GroupElement g = britton_reduce(p, random_word(rng, 12));
            Tile t = witness_tile(p, pc, g, random_point(rng, pc));
            REQUIRE(t.bottom.size() == static_cast<std::size_t>(p.n));
            REQUIRE(t.top.size() == static_cast<std::size_t>(p.m));
            REQUIRE(verify_tile_computes(p, pc, t));
        }
}

TEST_CASE("bottom and top colors are balanced windows") {
    Rng rng(45);
    for (const auto& p : kParams)
        for (int i = 0; i < 200; ++i) {
            AffinePiece pc = random_piece(rng);
            Rat lam = random_lambda(rng);
            RatVec2 x = random_point(rng, pc);
            Tile t = edge_colors(p, pc, lam, x);
            REQUIRE(t.bottom == window(x, Rat(p.n) * lam, 1, p.n).values);
            REQUIRE(t.top == window(pc.apply(x), Rat(p.m) * lam, 1, p.m).values);
        }
}

TEST_CASE("stitching identities") {
    Rng rng(46);
    for (const auto& p : kParams)
        for (int i = 0; i < 300; ++i) {
            AffinePiece pc = random_piece(rng);
            GroupElement g = britton_reduce(p, random_word(rng, 10));
            RatVec2 x = random_point(rng, pc);
            Tile here = witness_tile(p, pc, g, x);

            // ell(g a^m) = r(g)
            GroupElement gam = multiply(p, g, a_power(p, Int(p.m)));
            REQUIRE(witness_tile(p, pc, gam, x).left == here.right);

            // y_1(g a^k) = y_(1+k)(g)
            for (long k = 1; k < p.m; ++k)
                REQUIRE(witness_tile(p, pc, multiply(p, g, a_power(p, Int(k))), x).top[0] == here.top[k]);

            // y_1(g t, x) = x_1(g, f(x)); the upper tile's bottom only
            // depends on the point, so it is read off the balanced window.
            GroupElement gt = multiply(p, g, generator(p, Letter::T));
            IntVec2 y1 = witness_tile(p, pc, gt, x).top[0];
            REQUIRE(y1 == b_k(pc.apply(x), Rat(p.n) * g.lambda(p), 1));
        }
}

TEST_CASE("vertical transfer with a self map") {
    // f maps [0,1]^2 into itself, so the upper tile exists as a tile.
    AffinePiece pc = piece(0, 0, Mat2{q("1/2"), q("1/4"), Rat(0), q("2/3")}, v("1/8", "1/6"));
    Rng rng(47);
    for (const auto& p : kParams)
        for (int i = 0; i < 200; ++i) {
            GroupElement g = britton_reduce(p, random_word(rng, 10));
            RatVec2 x = random_point(rng, pc);
            GroupElement gt = multiply(p, g, generator(p, Letter::T));
            REQUIRE(witness_tile(p, pc, gt, x).top[0] == witness_tile(p, pc, g, pc.apply(x)).bottom[0]);
        }
}

TEST_CASE("ell bounds") {
    EllBounds eb = ell_bounds({2, 3}, piece(0, 0));
    CHECK(eb.q == 6);
    CHECK(eb.p1 == iv(-2, -2));
    CHECK(eb.p2 == iv(3, 3));
    CHECK(eb.contains(v("0", "0")));
    CHECK(eb.contains(v("-1/6", "-1/6")));
    CHECK_FALSE(eb.contains(v("1", "0")));
    CHECK(eb.on_grid(v("1/3", "-1/2")));
    CHECK_FALSE(eb.on_grid(v("1/4", "0")));
    CHECK(eb.grid_size() == 36);

    // Sampling oracle: every realized left/right color is inside and on grid.
    Rng rng(48);
    for (const auto& p : kParams)
        for (int i = 0; i < 100; ++i) {
            AffinePiece pc = random_piece(rng);
            EllBounds b = ell_bounds(p, pc);
            for (int j = 0; j < 20; ++j) {
                Tile t = edge_colors(p, pc, random_lambda(rng), random_point(rng, pc));
                REQUIRE(b.contains(t.left));
                REQUIRE(b.contains(t.right));
                REQUIRE(b.on_grid(t.left));
                REQUIRE(b.on_grid(t.right));
            }
        }
}

TEST_CASE("label boxes") {
    LabelBox lb = bottom_label_box(piece(0, 0));
    CHECK(lb.labels() == std::vector<IntVec2>{iv(0, 0), iv(0, 1), iv(1, 0), iv(1, 1)});
    LabelBox tb = top_label_box(escape_map().piece(0));
    CHECK(tb.contains(iv(2, 3)));
    CHECK_FALSE(tb.contains(iv(1, 2)));
    CHECK(tb.labels().size() == 4);
}

TEST_CASE("enumeration contains witnesses and is finite") {
    Tileset ts = identity23();
    CHECK(!ts.tiles.empty());
    CHECK(std::is_sorted(ts.tiles.begin(), ts.tiles.end()));
    CHECK(ts.contains(edge_colors({2, 3}, piece(0, 0), Rat(0), v("1/2", "1/2"))));
    CHECK(verify_tileset(ts).empty());
    Rng rng(49);
    for (int i = 0; i < 200; ++i) {
        GroupElement g = britton_reduce({2, 3}, random_word(rng, 10));
        REQUIRE(ts.contains(witness_tile({2, 3}, ts.map.piece(0), g, random_point(rng, ts.map.piece(0)))));
    }
    for (const auto& t : ts.tiles) {
        REQUIRE(ts.bounds[0].contains(t.left));
        REQUIRE(ts.bounds[0].contains(t.right));
    }
}

TEST_CASE("shape for BS(1,2)") {
    Tileset ts = enumerate_tileset({1, 2}, identity_map());
    CHECK(!ts.tiles.empty());
    for (const auto& t : ts.tiles) {
        REQUIRE(t.bottom.size() == 2);
        REQUIRE(t.top.size() == 1);
    }
}

TEST_CASE("parallel enumeration matches the serial reference") {
    std::vector<std::pair<BsParams, PiecewiseAffineMap>> cases = {
        {{1, 2}, identity_map()},
        {{2, 3}, identity_map()},
        {{3, 2}, escape_map()},
        {{2, 2}, PiecewiseAffineMap({piece(0, 0, Mat2{q("1/2"), Rat(0), q("1/3"), q("1/2")}, v("1/4", "0")),
                                     piece(1, 0, Mat2{}, v("-1", "1/3"))})},
    };
    for (const auto& [p, f] : cases) {
        Tileset a = enumerate_tileset(p, f), b = enumerate_tileset_serial(p, f);
        REQUIRE(a.tiles.size() == b.tiles.size());
        REQUIRE(a.tiles == b.tiles);
        REQUIRE(a.bounds == b.bounds);
    }
}

TEST_CASE("enumeration cap") {
    EnumerationOptions opts;
    opts.max_candidates = 100;
    CHECK(candidate_count({2, 3}, identity_map()) == 36864);
    CHECK_THROWS_AS(enumerate_tileset({2, 3}, identity_map(), opts), EnumerationTooLarge);
    CHECK_THROWS_AS(enumerate_tileset_serial({2, 3}, identity_map(), opts), EnumerationTooLarge);
}

TEST_CASE("export round trip") {
    Tileset ts = identity23();
    const std::string text = format_tileset(ts);
    CHECK(text.rfind("bsdomino-tileset v1\nm=2 n=3\n", 0) == 0);
    Tileset back = parse_tileset(text);
    CHECK(back.tiles == ts.tiles);
    CHECK(back.bounds == ts.bounds);
    CHECK(format_tileset(back) == text);
    CHECK(verify_tileset(back).empty());
}

TEST_CASE("corrupted tiles are found") {
    Tileset ts = enumerate_tileset({1, 2}, identity_map());
    std::string text = format_tileset(ts);
    // Perturb the right color of the third tile.
    Tileset bad = parse_tileset(text);
    bad.tiles[2].right.x1 += q("1/2");
    auto idx = verify_tileset(parse_tileset(format_tileset(bad)));
    REQUIRE(idx.size() == 1);
    CHECK(idx[0] == 2);

    bad = parse_tileset(text);
    bad.tiles[0].piece_index = 7;
    CHECK(verify_tileset(bad) == std::vector<std::size_t>{0});
}

TEST_CASE("malformed tileset text") {
    CHECK_THROWS_AS(parse_tileset("not a tileset\n"), std::invalid_argument);
    std::string text = format_tileset(enumerate_tileset({1, 1}, identity_map()));
    auto pos = text.find("| r:");
    REQUIRE(pos != std::string::npos);
    std::string broken = text.substr(0, pos) + "| r: 1/0,0\n";
    try {
        parse_tileset(broken);
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

}
