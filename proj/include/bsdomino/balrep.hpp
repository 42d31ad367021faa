#pragma once

// Balanced representations of points of the plane:
//
//     B_k(x, z) = floor((z + k) x) - floor((z + k - 1) x),   k in Z,
//
// a bi-infinite sequence of integer vectors with entries in
// {floor(x1), floor(x1)+1} x {floor(x2), floor(x2)+1} whose centred
// averages converge to x.

#include <stdexcept>
#include <vector>

#include "bsdomino/rational.hpp"

namespace bsdomino {

IntVec2 b_k(const RatVec2& x, const Rat& z, long k);

struct BalancedWindow {
    RatVec2 x;
    Rat z;
    long k_lo = 0;
    long k_hi = -1;
    std::vector<IntVec2> values;  // values[j] = B_{k_lo + j}(x, z)
};

class BadRange : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// B_k for k in [k_lo, k_hi]. Throws BadRange when k_lo > k_hi.
BalancedWindow window(const RatVec2& x, const Rat& z, long k_lo, long k_hi);

/// Max-norm of (1/(2K+1)) sum_{j=-K..K} B_j(x, z) - x. Throws BadRange
/// when K < 0.
Rat average_error(const RatVec2& x, const Rat& z, long K);

}  // namespace bsdomino
