#pragma once

// Wang tiles for BS(m,n) that compute one affine piece f_i(x) = M x + b.
//
// A tile sits on the 2-cell with top-left corner g: m top edges
// g, ga, ..., ga^(m-1); n bottom edges gt, gta, ..., gta^(n-1); a left
// t-edge at g and a right t-edge at ga^m. For a point x of the piece and
// lambda = lambda(g) its colors are
//
//   bottom_k = floor((n lambda + k) x)    - floor((n lambda + k-1) x),    k = 1..n
//   top_k    = floor((m lambda + k) f(x)) - floor((m lambda + k-1) f(x)), k = 1..m
//   left     = f(floor(n lambda x))/n     - floor(m lambda f(x))/m     + floor(lambda - 1/2) b
//   right    = f(floor((n lambda + n) x))/n - floor((m lambda + m) f(x))/m + floor(lambda + 1/2) b
//
// and every such tile satisfies  mean(top) + right = f(mean(bottom)) + left.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bsdomino/group.hpp"
#include "bsdomino/pam.hpp"
#include "bsdomino/rational.hpp"

namespace bsdomino {

struct Tile {
    std::size_t piece_index = 0;
    std::vector<IntVec2> bottom;  // n colors, left to right
    std::vector<IntVec2> top;     // m colors, left to right
    RatVec2 left;
    RatVec2 right;

    friend bool operator==(const Tile&, const Tile&) = default;
    friend std::strong_ordering operator<=>(const Tile& a, const Tile& b);

    /// One line of the tileset export format.
    std::string str() const;
};

class OutsidePiece : public std::runtime_error {
public:
    explicit OutsidePiece(const RatVec2& x)
        : std::runtime_error("point (" + x.str() + ") is outside the piece") {}
};

/// Tile colors for the piece at lambda and x. Throws OutsidePiece when x is
/// not in the closed square of the piece.
Tile edge_colors(const BsParams& p, const AffinePiece& piece, const Rat& lambda, const RatVec2& x,
                 std::size_t piece_index = 0);

/// edge_colors with lambda bound to lambda(g).
Tile witness_tile(const BsParams& p, const AffinePiece& piece, const GroupElement& g,
                  const RatVec2& x, std::size_t piece_index = 0);

/// Exact check of  mean(top) + right == f(mean(bottom)) + left  (and of the
/// edge counts n, m).
bool verify_tile_computes(const BsParams& p, const AffinePiece& piece, const Tile& tile);

/// floor(z + 1/2) - floor(z - 1/2) == 1
bool floor_half_identity_check(const Rat& z);

/// Box [p1/q, p2/q] on the grid of step 1/q that contains every left (and
/// right) color a tile of the piece can carry.
struct EllBounds {
    IntVec2 p1;
    IntVec2 p2;
    Int q{1};

    bool on_grid(const RatVec2& v) const;
    bool contains(const RatVec2& v) const;
    /// Number of grid points in the box.
    Int grid_size() const;
    friend bool operator==(const EllBounds&, const EllBounds&) = default;
};

EllBounds ell_bounds(const BsParams& p, const AffinePiece& piece);

/// Inclusive integer box [lo1,hi1] x [lo2,hi2] of admissible edge labels.
struct LabelBox {
    Int lo1, hi1, lo2, hi2;
    std::vector<IntVec2> labels() const;
    bool contains(const IntVec2& v) const;
};

/// Labels a balanced representation of a point of the square can take.
LabelBox bottom_label_box(const AffinePiece& piece);
/// Labels a balanced representation of a point of f_i(square) can take.
LabelBox top_label_box(const AffinePiece& piece);

struct Tileset {
    BsParams params;
    PiecewiseAffineMap map;
    std::vector<EllBounds> bounds;  // one per piece
    std::vector<Tile> tiles;        // canonical (sorted) order after enumeration

    bool contains(const Tile& t) const;
    std::optional<std::size_t> index_of(const Tile& t) const;
};

class EnumerationTooLarge : public std::runtime_error {
public:
    EnumerationTooLarge(const Int& candidates, std::uint64_t cap)
        : std::runtime_error("tileset enumeration needs " + candidates.get_str() +
                             " candidates, cap is " + std::to_string(cap)),
          candidates_(candidates), cap_(cap) {}
    const Int& candidates() const { return candidates_; }
    std::uint64_t cap() const { return cap_; }

private:
    Int candidates_;
    std::uint64_t cap_;
};

struct EnumerationOptions {
    static constexpr std::uint64_t kDefaultCap = 50'000'000;
    /// Upper bound on (bottom sequences x top sequences x left colors)
    /// summed over pieces.
    std::uint64_t max_candidates = kDefaultCap;

    /// Reads BSDOMINO_MAX_TILES, falling back to kDefaultCap.
    static EnumerationOptions from_env();
};

/// Candidate count the enumeration will examine.
Int candidate_count(const BsParams& p, const PiecewiseAffineMap& f);

/// All grid-consistent tiles satisfying the computes equation: bottoms in
/// bottom_label_box, tops in top_label_box, left and right colors in
/// ell_bounds. Parallel over bottom sequences with OpenMP; output is sorted
/// and independent of the thread count. Throws EnumerationTooLarge.
Tileset enumerate_tileset(const BsParams& p, const PiecewiseAffineMap& f,
                          const EnumerationOptions& opts = {});

/// Reference implementation: plain loops over every (bottom, top, left)
/// candidate, right color from the computes equation, box test.
Tileset enumerate_tileset_serial(const BsParams& p, const PiecewiseAffineMap& f,
                                 const EnumerationOptions& opts = {});

// -- text export -------------------------------------------------------------

/// Header (format tag, m and n, pieces with their EllBounds, tile count)
/// followed by one tile per line in stored order.
void write_tileset(std::ostream& os, const Tileset& ts);
std::string format_tileset(const Tileset& ts);
/// Inverse of write_tileset; tiles keep file order. Throws std::invalid_argument
/// with a line number on malformed input.
Tileset parse_tileset(std::string_view text);

/// Indices of tiles that fail verify_tile_computes, have the wrong shape,
/// or reference a missing piece.
std::vector<std::size_t> verify_tileset(const Tileset& ts);

}  // namespace bsdomino
