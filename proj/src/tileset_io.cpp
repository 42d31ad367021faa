#include <ostream>
#include <sstream>

#include "bsdomino/tileset.hpp"

namespace bsdomino {

namespace {

constexpr std::string_view kFormatTag = "bsdomino-tileset v1";

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next - pos)));
        if (next == std::string_view::npos) break;
        pos = next + sep.size();
    }
    return out;
}

struct LineError {
    std::size_t line;
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("tileset line " + std::to_string(line) + ": " + msg);
    }
};

std::string_view after_key(std::string_view field, std::string_view key, const LineError& at) {
    if (field.substr(0, key.size()) != key) at.fail("expected '" + std::string(key) + "'");
    return trim(field.substr(key.size()));
}

Int parse_int(std::string_view s, const LineError& at) {
    Int v;
    std::string str(trim(s));
    if (str.empty() || v.set_str(str, 10) != 0) at.fail("bad integer '" + str + "'");
    return v;
}

IntVec2 parse_ivec(std::string_view s, const LineError& at) {
    s = trim(s);
    if (s.size() < 5 || s.front() != '(' || s.back() != ')') at.fail("bad vector '" + std::string(s) + "'");
    auto parts = split(s.substr(1, s.size() - 2), ",");
    if (parts.size() != 2) at.fail("bad vector '" + std::string(s) + "'");
    return {parse_int(parts[0], at), parse_int(parts[1], at)};
}

std::vector<IntVec2> parse_ivec_list(std::string_view s, const LineError& at) {
    std::vector<IntVec2> out;
    s = trim(s);
    while (!s.empty()) {
        auto close = s.find(')');
        if (close == std::string_view::npos) at.fail("unterminated vector list");
        out.push_back(parse_ivec(s.substr(0, close + 1), at));
        s = trim(s.substr(close + 1));
    }
    return out;
}

RatVec2 parse_rvec(std::string_view s, const LineError& at) {
    try {
        return RatVec2::parse(s);
    } catch (const std::invalid_argument& e) {
        at.fail(e.what());
    }
}

Tile parse_tile(std::string_view line, const LineError& at) {
    auto f = split(line, "|");
    if (f.size() != 5) at.fail("tile needs 5 '|'-separated fields");
    Tile t;
    t.piece_index = static_cast<std::size_t>(parse_int(f[0], at).get_ui());
    t.bottom = parse_ivec_list(after_key(f[1], "bottom:", at), at);
    t.top = parse_ivec_list(after_key(f[2], "top:", at), at);
    t.left = parse_rvec(after_key(f[3], "l:", at), at);
    t.right = parse_rvec(after_key(f[4], "r:", at), at);
    return t;
}

std::string piece_line(std::size_t i, const AffinePiece& p, const EllBounds& eb) {
    std::ostringstream os;
    os << "piece " << i << " | square: " << p.corner.str() << " | M: " << p.M.a11.str() << ","
       << p.M.a12.str() << ";" << p.M.a21.str() << "," << p.M.a22.str() << " | b: " << p.b.str()
       << " | ell: p1=" << eb.p1.str() << " p2=" << eb.p2.str() << " q=" << eb.q.get_str();
    return os.str();
}

}  // namespace

void write_tileset(std::ostream& os, const Tileset& ts) {
    os << kFormatTag << "\n";
    os << "m=" << ts.params.m << " n=" << ts.params.n << "\n";
    os << "pieces=" << ts.map.size() << "\n";
    for (std::size_t i = 0; i < ts.map.size(); ++i)
        os << piece_line(i, ts.map.piece(i), ts.bounds.at(i)) << "\n";
    os << "tiles=" << ts.tiles.size() << "\n";
    for (const auto& t : ts.tiles) os << t.str() << "\n";
}

std::string format_tileset(const Tileset& ts) {
    std::ostringstream os;
    write_tileset(os, ts);
    return os.str();
}

Tileset parse_tileset(std::string_view text) {
    std::vector<std::string_view> lines;
    for (auto l : split(text, "\n"))
        if (!l.empty() && l.front() != '#') lines.push_back(l);
    // Line numbers in messages count non-empty lines from 1.
    std::size_t k = 0;
    auto next = [&]() -> std::pair<std::string_view, LineError> {
        if (k >= lines.size()) LineError{k + 1}.fail("unexpected end of file");
        ++k;
        return {lines[k - 1], LineError{k}};
    };

    if (auto [l, at] = next(); l != kFormatTag) at.fail("missing format tag '" + std::string(kFormatTag) + "'");

    auto [mn, at_mn] = next();
    auto mn_parts = split(mn, " ");
    if (mn_parts.size() != 2) at_mn.fail("expected 'm=<m> n=<n>'");
    const long m = parse_int(after_key(mn_parts[0], "m=", at_mn), at_mn).get_si();
    const long n = parse_int(after_key(mn_parts[1], "n=", at_mn), at_mn).get_si();
    BsParams params;
    try {
        params = BsParams(m, n);
    } catch (const std::invalid_argument& e) {
        at_mn.fail(e.what());
    }

    auto [pc, at_pc] = next();
    const std::size_t piece_count = parse_int(after_key(pc, "pieces=", at_pc), at_pc).get_ui();
    std::vector<AffinePiece> pieces;
    std::vector<EllBounds> bounds;
    for (std::size_t i = 0; i < piece_count; ++i) {
        auto [pl, at] = next();
        auto f = split(pl, "|");
        if (f.size() != 5) at.fail("piece needs 5 '|'-separated fields");
        if (parse_int(after_key(f[0], "piece", at), at) != Int(static_cast<unsigned long>(i)))
            at.fail("pieces out of order");
        AffinePiece p;
        p.corner = parse_ivec(after_key(f[1], "square:", at), at);
        auto rows = split(after_key(f[2], "M:", at), ";");
        if (rows.size() != 2) at.fail("M needs two rows");
        RatVec2 r1 = parse_rvec(rows[0], at), r2 = parse_rvec(rows[1], at);
        p.M = Mat2{r1.x1, r1.x2, r2.x1, r2.x2};
        p.b = parse_rvec(after_key(f[3], "b:", at), at);
        auto e = split(after_key(f[4], "ell:", at), " ");
        if (e.size() != 3) at.fail("ell needs p1, p2 and q");
        EllBounds eb;
        eb.p1 = parse_ivec(after_key(e[0], "p1=", at), at);
        eb.p2 = parse_ivec(after_key(e[1], "p2=", at), at);
        eb.q = parse_int(after_key(e[2], "q=", at), at);
        if (eb.q <= 0) at.fail("q must be positive");
        pieces.push_back(std::move(p));
        bounds.push_back(std::move(eb));
    }

    auto [tc, at_tc] = next();
    const std::size_t tile_count = parse_int(after_key(tc, "tiles=", at_tc), at_tc).get_ui();
    std::vector<Tile> tiles;
    tiles.reserve(tile_count);
    for (std::size_t i = 0; i < tile_count; ++i) {
        auto [tl, at] = next();
        tiles.push_back(parse_tile(tl, at));
    }
    if (k != lines.size()) LineError{k + 1}.fail("trailing content after the declared tiles");

    try {
        return Tileset{params, PiecewiseAffineMap(std::move(pieces)), std::move(bounds), std::move(tiles)};
    } catch (const InvalidMap& e) {
        throw std::invalid_argument(std::string("tileset header: ") + e.what());
    }
}

}  // namespace bsdomino
