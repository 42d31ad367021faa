#include "bsdomino/tileset.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <cstdlib>

#include "bsdomino/balrep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bsdomino {

namespace {

template <typename T>
std::strong_ordering compare_seq(const std::vector<T>& a, const std::vector<T>& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

RatVec2 mean(const std::vector<IntVec2>& vs) {
    IntVec2 sum;
    for (const auto& v : vs) sum += v;
    return RatVec2(sum) * Rat(Int(1), Int(static_cast<long>(vs.size())));
}

// Mixed-radix decoding of a sequence index into `len` labels.
void decode_sequence(std::uint64_t index, const std::vector<IntVec2>& alphabet, std::size_t len,
                     std::vector<IntVec2>& out) {
    out.resize(len);
    const std::uint64_t radix = alphabet.size();
    for (std::size_t pos = len; pos-- > 0;) {
        out[pos] = alphabet[index % radix];
        index /= radix;
    }
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

std::strong_ordering operator<=>(const Tile& a, const Tile& b) {
    if (auto c = a.piece_index <=> b.piece_index; c != 0) return c;
    if (auto c = compare_seq(a.bottom, b.bottom); c != 0) return c;
    if (auto c = compare_seq(a.top, b.top); c != 0) return c;
    if (auto c = a.left <=> b.left; c != 0) return c;
    return a.right <=> b.right;
}

std::string Tile::str() const {
    std::string s = std::to_string(piece_index) + " | bottom:";
    for (const auto& v : bottom) s += " " + v.str();
    s += " | top:";
    for (const auto& v : top) s += " " + v.str();
    s += " | l: " + left.str() + " | r: " + right.str();
    return s;
}

Tile edge_colors(const BsParams& p, const AffinePiece& piece, const Rat& lambda, const RatVec2& x,
                 std::size_t piece_index) {
    if (!piece.contains(x)) throw OutsidePiece(x);
    const Rat m(p.m), n(p.n);
    const Rat half(Int(1), Int(2));
    const RatVec2 fx = piece.apply(x);
    const Rat nl = n * lambda;
    const Rat ml = m * lambda;

    Tile t;
    t.piece_index = piece_index;
    t.bottom = window(x, nl, 1, p.n).values;
    t.top = window(fx, ml, 1, p.m).values;

    const Rat inv_n = Rat(1) / n;
    const Rat inv_m = Rat(1) / m;
    t.left = inv_n * piece.apply(RatVec2(floor(nl * x))) - inv_m * RatVec2(floor(ml * fx)) +
             Rat((lambda - half).floor()) * piece.b;
    t.right = inv_n * piece.apply(RatVec2(floor((nl + n) * x))) -
              inv_m * RatVec2(floor((ml + m) * fx)) + Rat((lambda + half).floor()) * piece.b;
    return t;
}

Tile witness_tile(const BsParams& p, const AffinePiece& piece, const GroupElement& g,
                  const RatVec2& x, std::size_t piece_index) {
    return edge_colors(p, piece, g.lambda(p), x, piece_index);
}

bool verify_tile_computes(const BsParams& p, const AffinePiece& piece, const Tile& tile) {
    if (tile.bottom.size() != static_cast<std::size_t>(p.n) ||
        tile.top.size() != static_cast<std::size_t>(p.m))
        return false;
    return mean(tile.top) + tile.right == piece.apply(mean(tile.bottom)) + tile.left;
}

bool floor_half_identity_check(const Rat& z) {
    const Rat half(Int(1), Int(2));
    return (z + half).floor() - (z - half).floor() == 1;
}

// ---------------------------------------------------------------------------
// Left/right color box
//
// Writing floor(u) = u - frac(u), the lambda x and lambda f(x) terms of the
// left color cancel and
//
//   left = -M phi/n + psi/m + b/n - (1/2 + theta) b,
//
// with phi, psi in [0,1)^2 and theta = frac(lambda - 1/2) in [0,1). The box
// below is the closed interval hull of that expression; the right color at
// lambda is the left color at lambda + 1 and lands in the same box.

bool EllBounds::on_grid(const RatVec2& v) const {
    return (v.x1 * Rat(q)).is_integer() && (v.x2 * Rat(q)).is_integer();
}

bool EllBounds::contains(const RatVec2& v) const {
    if (!on_grid(v)) return false;
    const Rat s1 = v.x1 * Rat(q), s2 = v.x2 * Rat(q);
    return Rat(p1.x1) <= s1 && s1 <= Rat(p2.x1) && Rat(p1.x2) <= s2 && s2 <= Rat(p2.x2);
}

Int EllBounds::grid_size() const {
    Int a = p2.x1 - p1.x1 + 1, b = p2.x2 - p1.x2 + 1;
    if (a <= 0 || b <= 0) return 0;
    return a * b;
}

EllBounds ell_bounds(const BsParams& p, const AffinePiece& piece) {
    const Rat m(p.m), n(p.n);
    const Rat zero(0), half(Int(1), Int(2)), three_halves(Int(3), Int(2));

    auto component = [&](const Rat& row1, const Rat& row2, const Rat& bc, Rat& lo, Rat& hi) {
        lo = bc / n;
        hi = bc / n;
        for (const Rat* mc : {&row1, &row2}) {
            const Rat coeff = -(*mc) / n;  // times phi_j in [0,1)
            lo += std::min(zero, coeff);
            hi += std::max(zero, coeff);
        }
        hi += Rat(1) / m;  // psi/m in [0, 1/m)
        const Rat e1 = -half * bc, e2 = -three_halves * bc;
        lo += std::min(e1, e2);
        hi += std::max(e1, e2);
    };

    Rat lo1, hi1, lo2, hi2;
    component(piece.M.a11, piece.M.a12, piece.b.x1, lo1, hi1);
    component(piece.M.a21, piece.M.a22, piece.b.x2, lo2, hi2);

    Int q(p.m);
    const Int nn(p.n);
    for (const Rat* r : {&piece.M.a11, &piece.M.a12, &piece.M.a21, &piece.M.a22, &piece.b.x1, &piece.b.x2})
        q = lcm(q, nn * r->den());

    EllBounds eb;
    eb.q = q;
    const Rat rq(q);
    eb.p1 = IntVec2((lo1 * rq).ceil(), (lo2 * rq).ceil());
    eb.p2 = IntVec2((hi1 * rq).floor(), (hi2 * rq).floor());
    return eb;
}

std::vector<IntVec2> LabelBox::labels() const {
    std::vector<IntVec2> out;
    for (Int a = lo1; a <= hi1; ++a)
        for (Int b = lo2; b <= hi2; ++b) out.emplace_back(a, b);
    return out;
}

bool LabelBox::contains(const IntVec2& v) const {
    return lo1 <= v.x1 && v.x1 <= hi1 && lo2 <= v.x2 && v.x2 <= hi2;
}

namespace {

// Balanced representations of points in the axis-aligned hull of four
// corners take values in [floor(lo), ceil(hi)] per coordinate.
LabelBox box_of_corners(const RatVec2& c00, const RatVec2& c10, const RatVec2& c01, const RatVec2& c11) {
    auto lo = [](const Rat& a, const Rat& b, const Rat& c, const Rat& d) { return std::min({a, b, c, d}).floor(); };
    auto hi = [](const Rat& a, const Rat& b, const Rat& c, const Rat& d) { return std::max({a, b, c, d}).ceil(); };
    return {lo(c00.x1, c10.x1, c01.x1, c11.x1), hi(c00.x1, c10.x1, c01.x1, c11.x1),
            lo(c00.x2, c10.x2, c01.x2, c11.x2), hi(c00.x2, c10.x2, c01.x2, c11.x2)};
}

std::array<RatVec2, 4> square_corners(const AffinePiece& piece) {
    const RatVec2 c(piece.corner);
    return {c, c + RatVec2(1, 0), c + RatVec2(0, 1), c + RatVec2(1, 1)};
}

}  // namespace

LabelBox bottom_label_box(const AffinePiece& piece) {
    auto c = square_corners(piece);
    return box_of_corners(c[0], c[1], c[2], c[3]);
}

LabelBox top_label_box(const AffinePiece& piece) {
    auto c = square_corners(piece);
    return box_of_corners(piece.apply(c[0]), piece.apply(c[1]), piece.apply(c[2]), piece.apply(c[3]));
}

bool Tileset::contains(const Tile& t) const { return index_of(t).has_value(); }

std::optional<std::size_t> Tileset::index_of(const Tile& t) const {
    if (std::is_sorted(tiles.begin(), tiles.end())) {
        auto it = std::lower_bound(tiles.begin(), tiles.end(), t);
        if (it != tiles.end() && *it == t) return static_cast<std::size_t>(it - tiles.begin());
        return std::nullopt;
    }
    auto it = std::find(tiles.begin(), tiles.end(), t);
    if (it == tiles.end()) return std::nullopt;
    return static_cast<std::size_t>(it - tiles.begin());
}

EnumerationOptions EnumerationOptions::from_env() {
    EnumerationOptions o;
    if (const char* v = std::getenv("BSDOMINO_MAX_TILES")) {
        char* end = nullptr;
        unsigned long long cap = std::strtoull(v, &end, 10);
        if (end != v && *end == '\0') o.max_candidates = cap;
    }
    return o;
}

Int candidate_count(const BsParams& p, const PiecewiseAffineMap& f) {
    Int total = 0;
    for (const auto& piece : f.pieces()) {
        const Int bottoms = Int(bottom_label_box(piece).labels().size());
        const Int tops = Int(top_label_box(piece).labels().size());
        Int b, t;
        mpz_pow_ui(b.get_mpz_t(), bottoms.get_mpz_t(), static_cast<unsigned long>(p.n));
        mpz_pow_ui(t.get_mpz_t(), tops.get_mpz_t(), static_cast<unsigned long>(p.m));
        total += b * t * ell_bounds(p, piece).grid_size();
    }
    return total;
}

namespace {

void check_cap(const BsParams& p, const PiecewiseAffineMap& f, const EnumerationOptions& opts) {
    const Int count = candidate_count(p, f);
    if (count > Int(std::to_string(opts.max_candidates))) throw EnumerationTooLarge(count, opts.max_candidates);
}

// All tiles of one piece whose bottom sequence has index `bi`. For a fixed
// (bottom, top) pair the right color is r = d + left with
// d = f(mean bottom) - mean top, so the admissible left colors form the
// intersection of the grid box with the box shifted by -d.
void tiles_for_bottom(const BsParams& p, const AffinePiece& piece, std::size_t piece_index,
                      const EllBounds& eb, const std::vector<IntVec2>& bottom_alphabet,
                      const std::vector<IntVec2>& top_alphabet, std::uint64_t bi,
                      std::vector<Tile>& out) {
    const std::size_t n = static_cast<std::size_t>(p.n), m = static_cast<std::size_t>(p.m);
    const std::uint64_t top_count = ipow(top_alphabet.size(), m);
    const Rat rq(eb.q);

    Tile t;
    t.piece_index = piece_index;
    decode_sequence(bi, bottom_alphabet, n, t.bottom);
    const RatVec2 fx = piece.apply(mean(t.bottom));

    for (std::uint64_t ti = 0; ti < top_count; ++ti) {
        decode_sequence(ti, top_alphabet, m, t.top);
        const RatVec2 d = fx - mean(t.top);
        const Rat dq1 = d.x1 * rq, dq2 = d.x2 * rq;
        if (!dq1.is_integer() || !dq2.is_integer()) continue;
        const Int lo1 = std::max(eb.p1.x1, Int(eb.p1.x1 - dq1.num()));
        const Int hi1 = std::min(eb.p2.x1, Int(eb.p2.x1 - dq1.num()));
        const Int lo2 = std::max(eb.p1.x2, Int(eb.p1.x2 - dq2.num()));
        const Int hi2 = std::min(eb.p2.x2, Int(eb.p2.x2 - dq2.num()));
        for (Int a = lo1; a <= hi1; ++a) {
            for (Int b = lo2; b <= hi2; ++b) {
                t.left = RatVec2(Rat(a, eb.q), Rat(b, eb.q));
                t.right = d + t.left;
                out.push_back(t);
            }
        }
    }
}

}  // namespace

Tileset enumerate_tileset(const BsParams& p, const PiecewiseAffineMap& f, const EnumerationOptions& opts) {
    check_cap(p, f, opts);
    Tileset ts{p, f, {}, {}};
    for (std::size_t i = 0; i < f.size(); ++i) {
        const AffinePiece& piece = f.piece(i);
        const EllBounds eb = ell_bounds(p, piece);
        ts.bounds.push_back(eb);
        const auto bottom_alphabet = bottom_label_box(piece).labels();
        const auto top_alphabet = top_label_box(piece).labels();
        const std::uint64_t bottom_count = ipow(bottom_alphabet.size(), static_cast<std::size_t>(p.n));

        std::vector<std::vector<Tile>> per_bottom(bottom_count);
        const auto count = static_cast<std::int64_t>(bottom_count);
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t bi = 0; bi < count; ++bi) {
            tiles_for_bottom(p, piece, i, eb, bottom_alphabet, top_alphabet,
                             static_cast<std::uint64_t>(bi), per_bottom[static_cast<std::size_t>(bi)]);
        }
        for (auto& chunk : per_bottom)
            std::move(chunk.begin(), chunk.end(), std::back_inserter(ts.tiles));
    }
    std::sort(ts.tiles.begin(), ts.tiles.end());
    return ts;
}

Tileset enumerate_tileset_serial(const BsParams& p, const PiecewiseAffineMap& f,
                                 const EnumerationOptions& opts) {
    check_cap(p, f, opts);
    Tileset ts{p, f, {}, {}};
    const std::size_t n = static_cast<std::size_t>(p.n), m = static_cast<std::size_t>(p.m);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const AffinePiece& piece = f.piece(i);
        const EllBounds eb = ell_bounds(p, piece);
        ts.bounds.push_back(eb);
        const auto bottom_alphabet = bottom_label_box(piece).labels();
        const auto top_alphabet = top_label_box(piece).labels();
        const std::uint64_t bottoms = ipow(bottom_alphabet.size(), n);
        const std::uint64_t tops = ipow(top_alphabet.size(), m);

        Tile t;
        t.piece_index = i;
        for (std::uint64_t bi = 0; bi < bottoms; ++bi) {
            decode_sequence(bi, bottom_alphabet, n, t.bottom);
            for (std::uint64_t ti = 0; ti < tops; ++ti) {
                decode_sequence(ti, top_alphabet, m, t.top);
                for (Int a = eb.p1.x1; a <= eb.p2.x1; ++a) {
                    for (Int b = eb.p1.x2; b <= eb.p2.x2; ++b) {
                        t.left = RatVec2(Rat(a, eb.q), Rat(b, eb.q));
                        t.right = piece.apply(mean(t.bottom)) + t.left - mean(t.top);
                        if (eb.contains(t.right)) ts.tiles.push_back(t);
                    }
                }
            }
        }
    }
    std::sort(ts.tiles.begin(), ts.tiles.end());
    return ts;
}

std::vector<std::size_t> verify_tileset(const Tileset& ts) {
    std::vector<std::size_t> bad;
    for (std::size_t k = 0; k < ts.tiles.size(); ++k) {
        const Tile& t = ts.tiles[k];
        if (t.piece_index >= ts.map.size()) {
            bad.push_back(k);
            continue;
        }
        const auto& piece = ts.map.piece(t.piece_index);
        bool ok = verify_tile_computes(ts.params, piece, t);
        if (ok && t.piece_index < ts.bounds.size()) {
            const auto& eb = ts.bounds[t.piece_index];
            ok = eb.contains(t.left) && eb.contains(t.right);
        }
        if (!ok) bad.push_back(k);
    }
    return bad;
}

}  // namespace bsdomino
