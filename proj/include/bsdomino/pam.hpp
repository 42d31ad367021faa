#pragma once

// Rational piecewise affine maps on unions of integer unit squares, and
// forward orbit iteration.
//
// Boundary ownership: a square [c1,c1+1] x [c2,c2+1] owns its lower and
// left closed edges; its upper/right edges belong to the neighbouring
// square when there is one, and to the square itself otherwise (outer
// boundary of U).

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bsdomino/group.hpp"
#include "bsdomino/rational.hpp"

namespace bsdomino {

struct AffinePiece {
    IntVec2 corner;  // lower-left corner of the unit square
    Mat2 M;
    RatVec2 b;

    RatVec2 apply(const RatVec2& x) const { return M * x + b; }
    /// Closed-square membership.
    bool contains(const RatVec2& x) const;
};

class InvalidMap : public std::runtime_error {
public:
    InvalidMap(const std::string& what, std::vector<IntVec2> squares)
        : std::runtime_error(what), squares_(std::move(squares)) {}
    const std::vector<IntVec2>& squares() const { return squares_; }

private:
    std::vector<IntVec2> squares_;
};

class OutsideDomain : public std::runtime_error {
public:
    explicit OutsideDomain(const RatVec2& x)
        : std::runtime_error("point (" + x.str() + ") is outside the domain") {}
};

class PiecewiseAffineMap {
public:
    /// Throws InvalidMap when the list is empty or two pieces share a square.
    explicit PiecewiseAffineMap(std::vector<AffinePiece> pieces);

    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    const AffinePiece& piece(std::size_t i) const { return pieces_.at(i); }
    std::size_t size() const { return pieces_.size(); }

    std::optional<std::size_t> locate_piece(const RatVec2& x) const;
    /// Throws OutsideDomain.
    RatVec2 evaluate(const RatVec2& x) const;

private:
    std::optional<std::size_t> square_at(const Int& c1, const Int& c2) const;

    std::vector<AffinePiece> pieces_;
    std::map<IntVec2, std::size_t> by_corner_;
};

struct OrbitState {
    std::size_t piece = 0;
    RatVec2 point;
    friend bool operator==(const OrbitState&, const OrbitState&) = default;
};

struct OrbitReport {
    enum class Outcome { EscapedAfter, AliveUpTo, CycleDetected };

    RatVec2 start;
    std::vector<OrbitState> states;  // states[k] = f^k(start), all inside U
    Outcome outcome = Outcome::AliveUpTo;
    std::size_t steps = 0;        // EscapedAfter k / AliveUpTo K
    std::size_t cycle_from = 0;   // CycleDetected: states[cycle_to] would equal states[cycle_from]
    std::size_t cycle_to = 0;

    /// f^d(start) when known: directly, or through the detected cycle.
    std::optional<OrbitState> state_at(std::size_t d) const;
    /// One-line machine-readable summary.
    std::string summary() const;

    friend bool operator==(const OrbitReport&, const OrbitReport&) = default;
};

/// Iterates until escape, exact state repetition, or max_steps images.
/// Throws OutsideDomain when the start point is not in U.
OrbitReport orbit(const PiecewiseAffineMap& f, const RatVec2& x, std::size_t max_steps);

/// A map-spec file: group parameters plus the map.
struct MapSpec {
    BsParams params;
    PiecewiseAffineMap map;
};

/// JSON syntax: {"m":2,"n":3,"pieces":[{"square":[0,0],"M":[["1","0"],["0","1"]],"b":["0","0"]}]}
/// Rationals are strings "p/q" or integer strings (plain JSON integers are
/// accepted too). Throws InvalidMap or std::invalid_argument.
MapSpec parse_map_spec(std::string_view json_text);
MapSpec load_map_spec(const std::filesystem::path& path);
std::string dump_map_spec(const MapSpec& spec);

}  // namespace bsdomino
