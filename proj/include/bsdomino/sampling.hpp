#pragma once

// Seeded generators for randomized checks: words, relator insertions and
// rational points of a piece.

#include <cstdint>
#include <random>

#include "bsdomino/group.hpp"
#include "bsdomino/pam.hpp"

namespace bsdomino {

using Rng = std::mt19937_64;

GroupWord random_word(Rng& rng, std::size_t length);

/// One of the trivial words t^-1 a^m t a^-n, its inverse, a cyclic
/// conjugate of either, or a cancelling pair x x^-1.
GroupWord random_trivial_word(const BsParams& p, Rng& rng);

/// w with a random trivial word spliced in at a random position.
GroupWord insert_relator(const BsParams& p, const GroupWord& w, Rng& rng);

/// Uniform rational in [lo, lo+1] with denominator drawn from [1, max_den].
Rat random_rat_in_unit(Rng& rng, const Int& lo, long max_den);

/// Rational point of the closed square of the piece.
RatVec2 random_point(Rng& rng, const AffinePiece& piece, long max_den = 60);

}  // namespace bsdomino
