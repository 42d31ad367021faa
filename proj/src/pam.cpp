#include "bsdomino/pam.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bsdomino {

bool AffinePiece::contains(const RatVec2& x) const {
    const Rat lo1(corner.x1), lo2(corner.x2);
    return lo1 <= x.x1 && x.x1 <= lo1 + Rat(1) && lo2 <= x.x2 && x.x2 <= lo2 + Rat(1);
}

PiecewiseAffineMap::PiecewiseAffineMap(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvalidMap("map has no pieces", {});
    std::vector<IntVec2> clashes;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        auto [it, fresh] = by_corner_.emplace(pieces_[i].corner, i);
        if (!fresh) clashes.push_back(pieces_[i].corner);
    }
    if (!clashes.empty()) {
        std::string msg = "overlapping pieces on square(s)";
        for (const auto& c : clashes) msg += " " + c.str();
        throw InvalidMap(msg, clashes);
    }
}

std::optional<std::size_t> PiecewiseAffineMap::square_at(const Int& c1, const Int& c2) const {
    auto it = by_corner_.find(IntVec2(c1, c2));
    if (it == by_corner_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> PiecewiseAffineMap::locate_piece(const RatVec2& x) const {
    const Int f1 = x.x1.floor(), f2 = x.x2.floor();
    if (auto i = square_at(f1, f2)) return i;
    // Points on the outer upper/right boundary belong to the square below/left.
    const bool int1 = x.x1.is_integer(), int2 = x.x2.is_integer();
    if (int1)
        if (auto i = square_at(f1 - 1, f2)) return i;
    if (int2)
        if (auto i = square_at(f1, f2 - 1)) return i;
    if (int1 && int2)
        if (auto i = square_at(f1 - 1, f2 - 1)) return i;
    return std::nullopt;
}

RatVec2 PiecewiseAffineMap::evaluate(const RatVec2& x) const {
    auto i = locate_piece(x);
    if (!i) throw OutsideDomain(x);
    return pieces_[*i].apply(x);
}

std::optional<OrbitState> OrbitReport::state_at(std::size_t d) const {
    if (d < states.size()) return states[d];
    if (outcome != Outcome::CycleDetected) return std::nullopt;
    const std::size_t period = cycle_to - cycle_from;
    return states[cycle_from + (d - cycle_from) % period];
}

std::string OrbitReport::summary() const {
    std::ostringstream os;
    switch (outcome) {
        case Outcome::EscapedAfter: os << "escaped_after=" << steps; break;
        case Outcome::AliveUpTo: os << "alive_up_to=" << steps; break;
        case Outcome::CycleDetected:
            os << "cycle_detected from=" << cycle_from << " to=" << cycle_to
               << " period=" << (cycle_to - cycle_from);
            break;
    }
    return os.str();
}

OrbitReport orbit(const PiecewiseAffineMap& f, const RatVec2& x, std::size_t max_steps) {
    auto first = f.locate_piece(x);
    if (!first) throw OutsideDomain(x);

    OrbitReport report;
    report.start = x;
    report.states.push_back({*first, x});
    std::map<RatVec2, std::size_t> seen{{x, 0}};

    for (std::size_t k = 1; k <= max_steps; ++k) {
        const OrbitState& prev = report.states.back();
        RatVec2 y = f.piece(prev.piece).apply(prev.point);
        auto piece = f.locate_piece(y);
        if (!piece) {
            report.outcome = OrbitReport::Outcome::EscapedAfter;
            report.steps = k;
            return report;
        }
        if (auto it = seen.find(y); it != seen.end()) {
            report.outcome = OrbitReport::Outcome::CycleDetected;
            report.cycle_from = it->second;
            report.cycle_to = k;
            return report;
        }
        seen.emplace(y, k);
        report.states.push_back({*piece, std::move(y)});
    }
    report.outcome = OrbitReport::Outcome::AliveUpTo;
    report.steps = max_steps;
    return report;
}

// ---------------------------------------------------------------------------
// Map-spec JSON

namespace {

using nlohmann::json;

Rat rat_from_json(const json& j) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw std::invalid_argument("expected a rational string, got " + j.dump());
}

Int int_from_json(const json& j) {
    Rat r = rat_from_json(j);
    if (!r.is_integer()) throw std::invalid_argument("expected an integer, got " + j.dump());
    return r.num();
}

}  // namespace

namespace {

AffinePiece piece_from_json(const json& jp) {
    const auto& sq = jp.at("square");
    const auto& jm = jp.at("M");
    const auto& jb = jp.at("b");
    if (sq.size() != 2 || jm.size() != 2 || jm[0].size() != 2 || jm[1].size() != 2 || jb.size() != 2)
        throw std::invalid_argument("piece has malformed square/M/b: " + jp.dump());
    AffinePiece p;
    p.corner = IntVec2(int_from_json(sq[0]), int_from_json(sq[1]));
    p.M.a11 = rat_from_json(jm[0][0]);
    p.M.a12 = rat_from_json(jm[0][1]);
    p.M.a21 = rat_from_json(jm[1][0]);
    p.M.a22 = rat_from_json(jm[1][1]);
    p.b = RatVec2(rat_from_json(jb[0]), rat_from_json(jb[1]));
    return p;
}

}  // namespace

MapSpec parse_map_spec(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("map spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("pieces"))
        throw std::invalid_argument("map spec needs an object with a \"pieces\" array");
    try {
        BsParams params(doc.value("m", 1L), doc.value("n", 1L));
        std::vector<AffinePiece> pieces;
        for (const auto& jp : doc.at("pieces")) pieces.push_back(piece_from_json(jp));
        return MapSpec{params, PiecewiseAffineMap(std::move(pieces))};
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed map spec: ") + e.what());
    }
}

MapSpec load_map_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open map spec '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map_spec(buf.str());
}

std::string dump_map_spec(const MapSpec& spec) {
    json doc;
    doc["m"] = spec.params.m;
    doc["n"] = spec.params.n;
    doc["pieces"] = json::array();
    auto r = [](const Rat& x) { return x.is_integer() ? x.num().get_str() : x.str(); };
    for (const auto& p : spec.map.pieces()) {
        json piece;
        piece["square"] = json::array({p.corner.x1.get_si(), p.corner.x2.get_si()});
        piece["M"] = json::array({json::array({r(p.M.a11), r(p.M.a12)}), json::array({r(p.M.a21), r(p.M.a22)})});
        piece["b"] = json::array({r(p.b.x1), r(p.b.x2)});
        doc["pieces"].push_back(std::move(piece));
    }
    return doc.dump();
}

}  // namespace bsdomino
