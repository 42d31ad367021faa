#include "bsdomino/tiling.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <ostream>
#include <set>

#include "bsdomino/balrep.hpp"

namespace bsdomino {

// ---------------------------------------------------------------------------
// Patches

Patch::Patch(const BsParams& p, std::vector<GroupElement> bases) : params_(p) {
    std::sort(bases.begin(), bases.end());
    bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
    const GroupElement am_t = multiply(p, a_power(p, Int(p.m)), generator(p, Letter::T));
    const GroupElement t_an = multiply(p, generator(p, Letter::T), a_power(p, Int(p.n)));
    for (auto& g : bases) {
        if (multiply(p, g, am_t) != multiply(p, g, t_an))
            throw std::logic_error("cell boundary does not close at " + g.str());
        const PhiValue v = g.phi(p);
        index_.emplace(g, cells_.size());
        cells_.push_back({std::move(g), v.beta, lambda_of(p, v)});
    }
}

std::optional<std::size_t> Patch::find(const GroupElement& g) const {
    auto it = index_.find(g);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Patch build_ball_patch(const BsParams& p, long radius) {
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    // Prefixes of a normal form are normal forms, so the ball is closed
    // under taking prefixes and a breadth-first walk reaches all of it.
    std::set<GroupElement> seen{GroupElement{}};
    std::vector<GroupElement> frontier{GroupElement{}};
    const Int r(radius);
    for (long step = 0; step < radius; ++step) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (Letter x : {Letter::A, Letter::AInv, Letter::T, Letter::TInv}) {
                GroupElement h = g;
                h.push(p, x);
                if (h.length() <= r && seen.insert(h).second) next.push_back(std::move(h));
            }
        }
        frontier = std::move(next);
    }
    return Patch(p, {seen.begin(), seen.end()});
}

// ---------------------------------------------------------------------------
// Constraints

const char* kind_name(Constraint::Kind k) {
    switch (k) {
        case Constraint::Kind::Horizontal: return "H";
        case Constraint::Kind::Vertical: return "V";
        case Constraint::Kind::SharedTop: return "T";
        case Constraint::Kind::SharedBottom: return "B";
        case Constraint::Kind::SameIndex: return "I";
    }
    return "?";
}

std::vector<Constraint> constraints_for(const Patch& patch) {
    using K = Constraint::Kind;
    using S = Slot::Kind;
    const BsParams& p = patch.params();
    const auto t = generator(p, Letter::T);
    const auto t_inv = generator(p, Letter::TInv);
    std::vector<Constraint> out;

    for (std::size_t u = 0; u < patch.size(); ++u) {
        const GroupElement& g = patch.cells()[u].base;
        auto times_a = [&](long e) { return multiply(p, g, a_power(p, Int(e))); };

        if (auto v = patch.find(times_a(p.m)))
            out.push_back({K::Horizontal, u, {S::Right, 0}, *v, {S::Left, 0}});
        if (auto v = patch.find(times_a(1)))
            out.push_back({K::SameIndex, u, {S::Piece, 0}, *v, {S::Piece, 0}});

        // Top edge j (1-based) starts at g a^(j-1).
        for (long j = 1; j <= p.m; ++j) {
            for (long k = 0; k < p.n; ++k) {
                auto above = multiply(p, times_a(j - 1 - k), t_inv);
                if (auto v = patch.find(above))
                    out.push_back({K::Vertical, u, {S::Top, static_cast<int>(j - 1)}, *v,
                                   {S::Bottom, static_cast<int>(k)}});
            }
            for (long s = 1; s <= j - 1; ++s) {
                if (auto v = patch.find(times_a(s)))
                    out.push_back({K::SharedTop, u, {S::Top, static_cast<int>(j - 1)}, *v,
                                   {S::Top, static_cast<int>(j - 1 - s)}});
            }
        }
        // Bottom edge k (0-based) starts at g t a^k.
        const auto gt = multiply(p, g, t);
        for (long k = 0; k < p.n; ++k) {
            for (long s = 1; s <= k; ++s) {
                auto other = multiply(p, multiply(p, gt, a_power(p, Int(s))), t_inv);
                if (auto v = patch.find(other))
                    out.push_back({K::SharedBottom, u, {S::Bottom, static_cast<int>(k)}, *v,
                                   {S::Bottom, static_cast<int>(k - s)}});
            }
        }
    }
    return out;
}

namespace {

enum class ValueSpace { Edge, Side, Piece };

ValueSpace space_of(Slot s) {
    switch (s.kind) {
        case Slot::Kind::Bottom:
        case Slot::Kind::Top: return ValueSpace::Edge;
        case Slot::Kind::Left:
        case Slot::Kind::Right: return ValueSpace::Side;
        case Slot::Kind::Piece: return ValueSpace::Piece;
    }
    return ValueSpace::Piece;
}

const IntVec2* edge_value(const Tile& t, Slot s) {
    const auto& edges = s.kind == Slot::Kind::Bottom ? t.bottom : t.top;
    if (s.index < 0 || static_cast<std::size_t>(s.index) >= edges.size()) return nullptr;
    return &edges[static_cast<std::size_t>(s.index)];
}

}  // namespace

bool satisfied(const Constraint& c, const Tile& tu, const Tile& tv) {
    if (space_of(c.su) != space_of(c.sv)) return false;
    switch (space_of(c.su)) {
        case ValueSpace::Edge: {
            const IntVec2* a = edge_value(tu, c.su);
            const IntVec2* b = edge_value(tv, c.sv);
            return a && b && *a == *b;
        }
        case ValueSpace::Side: {
            const RatVec2& a = c.su.kind == Slot::Kind::Left ? tu.left : tu.right;
            const RatVec2& b = c.sv.kind == Slot::Kind::Left ? tv.left : tv.right;
            return a == b;
        }
        case ValueSpace::Piece: return tu.piece_index == tv.piece_index;
    }
    return false;
}

std::vector<std::size_t> violations(const Patch& patch, const std::vector<Constraint>& cs,
                                    const TilingAssignment& a) {
    std::vector<std::size_t> bad;
    if (a.tiles.size() != patch.size()) {
        for (std::size_t i = 0; i < cs.size(); ++i) bad.push_back(i);
        return bad;
    }
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (!satisfied(cs[i], a.tiles[cs[i].u], a.tiles[cs[i].v])) bad.push_back(i);
    return bad;
}

// ---------------------------------------------------------------------------
// Rows

std::vector<Tile> simulate_row(const BsParams& p, const PiecewiseAffineMap& f, std::size_t piece_index,
                               const RatVec2& x, const GroupElement& g0, long k_lo, long k_hi) {
    if (k_lo > k_hi) throw BadRange("simulate_row: k_lo > k_hi");
    const AffinePiece& piece = f.piece(piece_index);
    if (!piece.contains(x)) throw OutsidePiece(x);
    // lambda(g0 a^(mk)) = lambda(g0) + k
    const Rat lambda0 = g0.lambda(p);
    std::vector<Tile> row;
    row.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    for (long k = k_lo; k <= k_hi; ++k) row.push_back(edge_colors(p, piece, lambda0 + Rat(k), x, piece_index));
    return row;
}

// ---------------------------------------------------------------------------
// Search

const char* status_name(SearchResult::Status s) {
    switch (s) {
        case SearchResult::Status::Found: return "found";
        case SearchResult::Status::ExhaustedNoTiling: return "exhausted-no-tiling";
        case SearchResult::Status::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

namespace {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t bits, bool fill = false)
        : words_((bits + 63) / 64, fill ? ~std::uint64_t{0} : 0), bits_(bits) {
        if (fill && bits % 64 != 0) words_.back() = (std::uint64_t{1} << (bits % 64)) - 1;
    }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    friend bool operator==(const Bitset&, const Bitset&) = default;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            for (std::uint64_t w = words_[wi]; w != 0; w &= w - 1)
                fn(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        }
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t bits_ = 0;
};

class Solver {
public:
    Solver(const Tileset& ts, const Patch& patch, std::uint64_t budget)
        : ts_(ts), patch_(patch), budget_(budget), m_(ts.params.m), n_(ts.params.n) {
        intern_values();
        build_arcs();
    }

    SearchResult run() {
        SearchResult res;
        const std::size_t cells = patch_.size();
        domains_.assign(cells, Bitset(ts_.tiles.size(), true));
        assigned_.assign(cells, kUnassigned);
        if (!arc_consistency()) {
            res.status = SearchResult::Status::ExhaustedNoTiling;
            return res;
        }
        const bool found = dfs();
        res.nodes = nodes_;
        if (found) {
            res.status = SearchResult::Status::Found;
            res.tile_ids = assigned_;
            TilingAssignment a;
            for (auto id : assigned_) a.tiles.push_back(ts_.tiles[id]);
            res.assignment = std::move(a);
        } else {
            res.status = over_budget_ ? SearchResult::Status::BudgetExceeded
                                      : SearchResult::Status::ExhaustedNoTiling;
        }
        return res;
    }

private:
    static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

    struct Arc {
        std::size_t other;
        int mine;    // slot key on this cell
        int theirs;  // slot key on the other cell
    };

    // Slot keys: bottoms 0..n-1, tops n..n+m-1, left, right, piece.
    int key(Slot s) const {
        switch (s.kind) {
            case Slot::Kind::Bottom: return s.index;
            case Slot::Kind::Top: return static_cast<int>(n_) + s.index;
            case Slot::Kind::Left: return static_cast<int>(n_ + m_);
            case Slot::Kind::Right: return static_cast<int>(n_ + m_) + 1;
            case Slot::Kind::Piece: return static_cast<int>(n_ + m_) + 2;
        }
        return -1;
    }
    int slot_count() const { return static_cast<int>(n_ + m_) + 3; }

    void intern_values() {
        std::map<IntVec2, std::uint32_t> edges;
        std::map<RatVec2, std::uint32_t> sides;
        auto id_of = [](auto& table, const auto& v) {
            auto [it, fresh] = table.emplace(v, static_cast<std::uint32_t>(table.size()));
            return it->second;
        };
        const std::size_t T = ts_.tiles.size();
        values_.assign(T, std::vector<std::uint32_t>(static_cast<std::size_t>(slot_count())));
        for (std::size_t i = 0; i < T; ++i) {
            const Tile& t = ts_.tiles[i];
            if (t.bottom.size() != static_cast<std::size_t>(n_) || t.top.size() != static_cast<std::size_t>(m_))
                throw std::invalid_argument("tile " + std::to_string(i) + " has the wrong edge count");
            auto& row = values_[i];
            for (long k = 0; k < n_; ++k) row[static_cast<std::size_t>(k)] = id_of(edges, t.bottom[static_cast<std::size_t>(k)]);
            for (long j = 0; j < m_; ++j) row[static_cast<std::size_t>(n_ + j)] = id_of(edges, t.top[static_cast<std::size_t>(j)]);
            row[static_cast<std::size_t>(n_ + m_)] = id_of(sides, t.left);
            row[static_cast<std::size_t>(n_ + m_ + 1)] = id_of(sides, t.right);
            row[static_cast<std::size_t>(n_ + m_ + 2)] = static_cast<std::uint32_t>(t.piece_index);
        }
        std::size_t pieces = ts_.map.size();
        for (const auto& t : ts_.tiles) pieces = std::max(pieces, t.piece_index + 1);

        tables_.resize(static_cast<std::size_t>(slot_count()));
        for (int s = 0; s < slot_count(); ++s) {
            std::size_t values = s < static_cast<int>(n_ + m_) ? edges.size()
                               : s < static_cast<int>(n_ + m_) + 2 ? sides.size()
                                                                   : pieces;
            tables_[static_cast<std::size_t>(s)].assign(values, Bitset(T));
        }
        for (std::size_t i = 0; i < T; ++i)
            for (int s = 0; s < slot_count(); ++s)
                tables_[static_cast<std::size_t>(s)][values_[i][static_cast<std::size_t>(s)]].set(i);
    }

    void build_arcs() {
        arcs_.assign(patch_.size(), {});
        for (const auto& c : constraints_for(patch_)) {
            arcs_[c.u].push_back({c.v, key(c.su), key(c.sv)});
            arcs_[c.v].push_back({c.u, key(c.sv), key(c.su)});
        }
    }

    const Bitset& table(int slot, std::uint32_t value) const {
        return tables_[static_cast<std::size_t>(slot)][value];
    }

    // Removes from domain(u) every tile without a support in domain(arc.other).
    bool revise(std::size_t u, const Arc& arc) {
        const auto& other_tables = tables_[static_cast<std::size_t>(arc.theirs)];
        Bitset supported(ts_.tiles.size());
        for (std::uint32_t v = 0; v < other_tables.size(); ++v)
            if (other_tables[v].intersects(domains_[arc.other])) supported |= table(arc.mine, v);
        Bitset next = domains_[u];
        next &= supported;
        if (next == domains_[u]) return false;
        domains_[u] = std::move(next);
        return true;
    }

    bool arc_consistency() {
        std::deque<std::pair<std::size_t, std::size_t>> queue;  // (cell, arc index)
        for (std::size_t u = 0; u < arcs_.size(); ++u) {
            if (!domains_[u].any()) return false;
            for (std::size_t a = 0; a < arcs_[u].size(); ++a) queue.emplace_back(u, a);
        }
        while (!queue.empty()) {
            auto [u, a] = queue.front();
            queue.pop_front();
            if (!revise(u, arcs_[u][a])) continue;
            if (!domains_[u].any()) return false;
            // Re-check every arc that points at u.
            for (const Arc& back : arcs_[u]) {
                const std::size_t w = back.other;
                for (std::size_t b = 0; b < arcs_[w].size(); ++b)
                    if (arcs_[w][b].other == u) queue.emplace_back(w, b);
            }
        }
        return true;
    }

    std::size_t pick_cell() const {
        std::size_t best = kUnassigned, best_count = 0;
        for (std::size_t c = 0; c < domains_.size(); ++c) {
            if (assigned_[c] != kUnassigned) continue;
            std::size_t cnt = domains_[c].count();
            if (best == kUnassigned || cnt < best_count) {
                best = c;
                best_count = cnt;
            }
        }
        return best;
    }

    bool dfs() {
        const std::size_t cell = pick_cell();
        if (cell == kUnassigned) return true;

        std::vector<std::size_t> candidates;
        domains_[cell].for_each([&](std::size_t t) { candidates.push_back(t); });

        for (std::size_t tile : candidates) {
            if (nodes_ >= budget_) {
                over_budget_ = true;
                return false;
            }
            ++nodes_;
            std::vector<std::pair<std::size_t, Bitset>> trail;
            bool ok = true;
            for (const Arc& arc : arcs_[cell]) {
                const std::uint32_t value = values_[tile][static_cast<std::size_t>(arc.mine)];
                if (arc.other == cell) {  // self-loop: both slots on this tile
                    if (values_[tile][static_cast<std::size_t>(arc.theirs)] != value) ok = false;
                } else if (assigned_[arc.other] != kUnassigned) {
                    if (values_[assigned_[arc.other]][static_cast<std::size_t>(arc.theirs)] != value) ok = false;
                } else {
                    Bitset next = domains_[arc.other];
                    next &= table(arc.theirs, value);
                    if (!(next == domains_[arc.other])) {
                        trail.emplace_back(arc.other, std::move(domains_[arc.other]));
                        domains_[arc.other] = std::move(next);
                    }
                    if (!domains_[arc.other].any()) ok = false;
                }
                if (!ok) break;
            }
            if (ok) {
                assigned_[cell] = tile;
                if (dfs()) return true;
                assigned_[cell] = kUnassigned;
            }
            for (auto it = trail.rbegin(); it != trail.rend(); ++it) domains_[it->first] = std::move(it->second);
            if (over_budget_) return false;
        }
        return false;
    }

    const Tileset& ts_;
    const Patch& patch_;
    std::uint64_t budget_;
    long m_, n_;

    std::vector<std::vector<std::uint32_t>> values_;  // [tile][slot] -> value id
    std::vector<std::vector<Bitset>> tables_;         // [slot][value] -> tiles
    std::vector<std::vector<Arc>> arcs_;
    std::vector<Bitset> domains_;
    std::vector<std::size_t> assigned_;
    std::uint64_t nodes_ = 0;
    bool over_budget_ = false;
};

}  // namespace

SearchResult search_patch(const Tileset& ts, const Patch& patch, std::uint64_t budget) {
    if (patch.size() == 0) {
        SearchResult r;
        r.status = SearchResult::Status::Found;
        r.assignment = TilingAssignment{};
        return r;
    }
    if (ts.tiles.empty()) return SearchResult{};

    SearchResult res = Solver(ts, patch, budget).run();
    if (res.status == SearchResult::Status::Found) {
        if (!violations(patch, constraints_for(patch), *res.assignment).empty())
            throw std::logic_error("search produced an assignment that violates its constraints");
    }
    return res;
}

// ---------------------------------------------------------------------------
// Orbit witnesses

TilingAssignment assignment_from_orbit(const BsParams& p, const PiecewiseAffineMap& f,
                                       const OrbitReport& orbit, const Patch& patch) {
    TilingAssignment a;
    if (patch.size() == 0) return a;
    long lowest = patch.cells().front().level;
    for (const auto& c : patch.cells()) lowest = std::min(lowest, c.level);
    for (const auto& c : patch.cells()) {
        const auto depth = static_cast<std::size_t>(c.level - lowest);
        auto state = orbit.state_at(depth);
        if (!state)
            throw OrbitTooShort("patch spans " + std::to_string(depth + 1) + " levels but the orbit has " +
                                std::to_string(orbit.states.size()) + " states");
        a.tiles.push_back(edge_colors(p, f.piece(state->piece), c.lambda, state->point, state->piece));
    }
    return a;
}

// ---------------------------------------------------------------------------
// Exports

void write_dot(std::ostream& os, const Patch& patch, const std::vector<Constraint>& cs,
               const std::vector<std::size_t>* tile_ids) {
    os << "graph patch {\n";
    os << "  node [shape=box];\n";
    for (std::size_t i = 0; i < patch.size(); ++i) {
        os << "  c" << i << " [label=\"" << patch.cells()[i].base.str();
        if (tile_ids) os << "\\ntile " << (*tile_ids)[i];
        os << "\"];\n";
    }
    std::set<std::tuple<std::size_t, std::size_t, std::string>> edges;
    for (const auto& c : cs) {
        if (c.kind == Constraint::Kind::SameIndex) continue;
        const std::string label = c.kind == Constraint::Kind::Horizontal ? "t" : "a";
        edges.emplace(std::min(c.u, c.v), std::max(c.u, c.v), label);
    }
    for (const auto& [u, v, label] : edges)
        os << "  c" << u << " -- c" << v << " [label=\"" << label << "\""
           << (label == "t" ? ", style=bold" : "") << "];\n";
    os << "}\n";
}

void write_tiling(std::ostream& os, const Patch& patch, const std::vector<std::size_t>& tile_ids) {
    for (std::size_t i = 0; i < patch.size(); ++i)
        os << patch.cells()[i].base.str() << " -> " << tile_ids.at(i) << "\n";
}

}  // namespace bsdomino
