#pragma once

// Finite patches of the Cayley 2-complex of BS(m,n) and Wang tilings of
// them.
//
// The cell based at g has top a-edges starting at g, ga, ..., ga^(m-1),
// bottom a-edges starting at gt, gta, ..., gta^(n-1), a left t-edge g->gt
// and a right t-edge ga^m->ga^m t = gta^n. Every a-edge is the top edge of
// m cells (the m sheets below its line) and the bottom edge of n cells (the
// n sheets above it); every t-edge is shared by exactly two cells.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsdomino/group.hpp"
#include "bsdomino/pam.hpp"
#include "bsdomino/tileset.hpp"

namespace bsdomino {

struct Cell {
    GroupElement base;
    long level = 0;  // beta(base); t moves one level down
    Rat lambda;      // lambda(base)
};

/// Set of cells in canonical-form order, with lookup by base element.
class Patch {
public:
    /// Deduplicates the bases and checks that every cell boundary closes
    /// (g a^m t == g t a^n); throws std::logic_error otherwise.
    Patch(const BsParams& p, std::vector<GroupElement> bases);

    const BsParams& params() const { return params_; }
    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    std::optional<std::size_t> find(const GroupElement& g) const;

private:
    BsParams params_;
    std::vector<Cell> cells_;
    std::map<GroupElement, std::size_t> index_;
};

/// Every cell whose base has normal-form length <= radius.
Patch build_ball_patch(const BsParams& p, long radius);

/// Tile attribute that a constraint compares.
struct Slot {
    enum class Kind : std::uint8_t { Bottom, Top, Left, Right, Piece };
    Kind kind = Kind::Piece;
    int index = 0;  // 0-based edge index for Bottom/Top
    friend bool operator==(const Slot&, const Slot&) = default;
};

/// slot_u(tile(u)) == slot_v(tile(v)).
struct Constraint {
    enum class Kind : std::uint8_t {
        Horizontal,    // right(g) = left(g a^m)
        Vertical,      // top_j(g) = bottom_(k+1)(g a^(j-1-k) t^-1)
        SharedTop,     // top_j(g) = top_(j-s)(g a^s): cells below one a-edge
        SharedBottom,  // bottom_(k+1)(g) = bottom_(k+1-s)(g t a^s t^-1): cells above one a-edge
        SameIndex,     // piece(g) = piece(g a)
    };
    Kind kind;
    std::size_t u;
    Slot su;
    std::size_t v;
    Slot sv;
};

const char* kind_name(Constraint::Kind k);

std::vector<Constraint> constraints_for(const Patch& patch);

/// Does the pair of tiles satisfy the constraint?
bool satisfied(const Constraint& c, const Tile& tu, const Tile& tv);

/// Tiles aligned with patch.cells().
struct TilingAssignment {
    std::vector<Tile> tiles;
};

/// Indices of violated constraints (empty: the assignment is a valid tiling).
std::vector<std::size_t> violations(const Patch& patch, const std::vector<Constraint>& cs,
                                    const TilingAssignment& a);

/// Tiles at g0 a^(m k), k in [k_lo, k_hi], for the point x of piece i:
/// consecutive tiles are horizontal neighbours. Their bottoms read the
/// balanced window B_(n k_lo + 1 .. n k_hi + n)(x, n lambda(g0)) and their
/// tops B_(m k_lo + 1 .. m k_hi + m)(f_i(x), m lambda(g0)). Throws
/// OutsidePiece or BadRange.
std::vector<Tile> simulate_row(const BsParams& p, const PiecewiseAffineMap& f, std::size_t piece_index,
                               const RatVec2& x, const GroupElement& g0, long k_lo, long k_hi);

struct SearchResult {
    enum class Status { Found, ExhaustedNoTiling, BudgetExceeded };
    Status status = Status::ExhaustedNoTiling;
    std::vector<std::size_t> tile_ids;     // Found: tileset index per cell
    std::optional<TilingAssignment> assignment;
    std::uint64_t nodes = 0;
};

const char* status_name(SearchResult::Status s);

/// Depth-first backtracking over tile choices: arc consistency at the root,
/// then most-constrained-cell ordering with forward checking. Ties are
/// broken by cell order and tile order, so results are deterministic.
/// `budget` caps the number of tile assignments tried.
SearchResult search_patch(const Tileset& ts, const Patch& patch, std::uint64_t budget);

class OrbitTooShort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Witness tiling: the cell at depth d (levels counted up from the lowest
/// cell of the patch) carries edge_colors(lambda(base), f^d(x)). Throws
/// OrbitTooShort when the orbit does not reach the top level.
TilingAssignment assignment_from_orbit(const BsParams& p, const PiecewiseAffineMap& f,
                                       const OrbitReport& orbit, const Patch& patch);

// -- exports -------------------------------------------------------------------

/// DOT graph: one node per cell (normal form, tile id when assigned), one
/// edge per pair of cells sharing a t-edge (H) or an a-edge (V/T/B).
void write_dot(std::ostream& os, const Patch& patch, const std::vector<Constraint>& cs,
               const std::vector<std::size_t>* tile_ids);
/// One "normal-form -> tile-id" line per cell.
void write_tiling(std::ostream& os, const Patch& patch, const std::vector<std::size_t>& tile_ids);

}  // namespace bsdomino
