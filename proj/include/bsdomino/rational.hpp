#pragma once

// Exact arithmetic used throughout the library: arbitrary precision
// integers and rationals, plus the 2-vectors and 2x2 matrices that carry
// points of the plane, edge colors and affine pieces.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace bsdomino {

using Int = mpz_class;

/// Rational number stored in lowest terms with a positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}                                   // NOLINT
    Rat(const Int& v) : v_(v) {}                             // NOLINT
    Rat(const Int& num, const Int& den);
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    /// Parses "p/q" or "p" (optional sign). Throws std::invalid_argument.
    static Rat parse(std::string_view text);

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    /// Greatest integer <= value.
    Int floor() const;
    /// Least integer >= value.
    Int ceil() const;

    /// Always "p/q", even for integers ("0/1", "-3/1").
    std::string str() const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// base^exp for an integer exponent of either sign. base must be nonzero
    /// when exp < 0.
    static Rat pow(const Rat& base, long exp);

private:
    mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

/// Three-way comparison on GMP integers.
inline std::strong_ordering compare_int(const Int& a, const Int& b) {
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
}

/// Integer 2-vector (balanced representation values, bottom/top edge colors).
struct IntVec2 {
    Int x1{0};
    Int x2{0};

    IntVec2() = default;
    IntVec2(Int a, Int b) : x1(std::move(a)), x2(std::move(b)) {}

    IntVec2& operator+=(const IntVec2& o) { x1 += o.x1; x2 += o.x2; return *this; }
    IntVec2& operator-=(const IntVec2& o) { x1 -= o.x1; x2 -= o.x2; return *this; }
    friend IntVec2 operator+(IntVec2 a, const IntVec2& b) { return a += b; }
    friend IntVec2 operator-(IntVec2 a, const IntVec2& b) { return a -= b; }

    friend bool operator==(const IntVec2& a, const IntVec2& b) {
        return a.x1 == b.x1 && a.x2 == b.x2;
    }
    friend std::strong_ordering operator<=>(const IntVec2& a, const IntVec2& b) {
        if (auto c = compare_int(a.x1, b.x1); c != 0) return c;
        return compare_int(a.x2, b.x2);
    }

    /// "(x1,x2)"
    std::string str() const;
};

/// Pair of exact rationals: points, images, left/right edge colors.
struct RatVec2 {
    Rat x1;
    Rat x2;

    RatVec2() = default;
    RatVec2(Rat a, Rat b) : x1(std::move(a)), x2(std::move(b)) {}
    explicit RatVec2(const IntVec2& v) : x1(v.x1), x2(v.x2) {}

    RatVec2& operator+=(const RatVec2& o) { x1 += o.x1; x2 += o.x2; return *this; }
    RatVec2& operator-=(const RatVec2& o) { x1 -= o.x1; x2 -= o.x2; return *this; }
    RatVec2& operator*=(const Rat& s) { x1 *= s; x2 *= s; return *this; }
    friend RatVec2 operator+(RatVec2 a, const RatVec2& b) { return a += b; }
    friend RatVec2 operator-(RatVec2 a, const RatVec2& b) { return a -= b; }
    friend RatVec2 operator*(const Rat& s, RatVec2 v) { return v *= s; }
    friend RatVec2 operator*(RatVec2 v, const Rat& s) { return v *= s; }
    RatVec2 operator-() const { return {-x1, -x2}; }

    friend bool operator==(const RatVec2& a, const RatVec2& b) = default;
    friend std::strong_ordering operator<=>(const RatVec2& a, const RatVec2& b) {
        if (auto c = a.x1 <=> b.x1; c != 0) return c;
        return a.x2 <=> b.x2;
    }

    bool is_zero() const { return x1.is_zero() && x2.is_zero(); }

    /// "p/q,p/q"
    std::string str() const;
    /// Parses "p/q,p/q".
    static RatVec2 parse(std::string_view text);
};

/// Componentwise floor.
IntVec2 floor(const RatVec2& v);

/// 2x2 rational matrix, row major.
struct Mat2 {
    Rat a11{1}, a12{0};
    Rat a21{0}, a22{1};

    static Mat2 identity() { return {}; }

    RatVec2 operator*(const RatVec2& v) const {
        return {a11 * v.x1 + a12 * v.x2, a21 * v.x1 + a22 * v.x2};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Least common multiple of two positive integers.
Int lcm(const Int& a, const Int& b);

}  // namespace bsdomino
