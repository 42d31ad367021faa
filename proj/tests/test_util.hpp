#pragma once

#include <string>

#include "bsdomino/group.hpp"
#include "bsdomino/pam.hpp"
#include "bsdomino/rational.hpp"

namespace testutil {

using namespace bsdomino;

inline Rat q(const char* s) { return Rat::parse(s); }
inline RatVec2 v(const char* a, const char* b) { return {Rat::parse(a), Rat::parse(b)}; }
inline IntVec2 iv(long a, long b) { return {Int(a), Int(b)}; }
inline GroupWord w(const char* s) { return GroupWord::parse(s); }

inline AffinePiece piece(long c1, long c2, Mat2 M = {}, RatVec2 b = {}) {
    AffinePiece p;
    p.corner = iv(c1, c2);
    p.M = M;
    p.b = b;
    return p;
}

inline PiecewiseAffineMap identity_map() { return PiecewiseAffineMap({piece(0, 0)}); }
inline PiecewiseAffineMap escape_map() { return PiecewiseAffineMap({piece(0, 0, {}, v("2", "2"))}); }

// 90 degree rotation on [-1,1]^2.
inline PiecewiseAffineMap rotation_map() {
    Mat2 r{Rat(0), Rat(-1), Rat(1), Rat(0)};
    return PiecewiseAffineMap({piece(0, 0, r), piece(-1, 0, r), piece(-1, -1, r), piece(0, -1, r)});
}

inline std::string maps_dir() { return BSDOMINO_MAPS; }

}  // namespace testutil
