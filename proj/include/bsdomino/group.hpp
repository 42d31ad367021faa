#pragma once

// Words and elements of the Baumslag-Solitar group
//
//     BS(m,n) = < a, t | t^-1 a^m t = a^n >,   m, n >= 1,
//
// together with the valuations beta (minus the t-contribution), alpha
// (the horizontal coordinate of the plane embedding), Phi = (alpha, beta)
// and lambda, the scaled coordinate that indexes tile colors.
//
// Elements are kept in Britton normal form:
//
//     a^e0 t^s1 a^e1 t^s2 ... a^e(k-1) t^sk a^tail
//
// with no pinch (t^-1 a^(mj) t or t a^(nj) t^-1) and every exponent
// immediately before a `t` in [0, m) and before a `T` in [0, n). Excess
// powers are pushed to the right using a^m t = t a^n and a^n T = T a^m.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bsdomino/rational.hpp"

namespace bsdomino {

struct BsParams {
    long m = 1;
    long n = 1;

    BsParams() = default;
    BsParams(long m_, long n_) : m(m_), n(n_) {
        if (m < 1 || n < 1) throw std::invalid_argument("BS(m,n) requires m >= 1 and n >= 1");
    }
    friend bool operator==(const BsParams&, const BsParams&) = default;
};

enum class Letter : std::uint8_t { A, T, AInv, TInv };

constexpr Letter inverse(Letter x) {
    switch (x) {
        case Letter::A: return Letter::AInv;
        case Letter::AInv: return Letter::A;
        case Letter::T: return Letter::TInv;
        case Letter::TInv: return Letter::T;
    }
    return x;
}

char letter_char(Letter x);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// A finite, not necessarily reduced, word over {a, t, a^-1, t^-1}.
struct GroupWord {
    std::vector<Letter> letters;

    GroupWord() = default;
    explicit GroupWord(std::vector<Letter> ls) : letters(std::move(ls)) {}

    /// Compact syntax: `a`, `A` (= a^-1), `t`, `T` (= t^-1), each with an
    /// optional integer exponent; whitespace is ignored. `a-2` and `A2`
    /// both denote a^-2, and so does `A-2`. Throws ParseError.
    static GroupWord parse(std::string_view text);

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    GroupWord inverse() const;

    /// One character per letter, e.g. "taTaa".
    std::string str() const;

    friend GroupWord operator*(const GroupWord& u, const GroupWord& v);
    friend bool operator==(const GroupWord&, const GroupWord&) = default;
};

/// |w|_x - |w|_{x^-1}
long contribution(const GroupWord& w, Letter x);

/// beta(w) = -contribution(w, t)
long beta(const GroupWord& w);

/// alpha by the letter-by-letter recursion: alpha(empty) = 0, t-letters do
/// not move it, a^{+-1} moves it by +-(m/n)^(-beta(prefix)).
Rat alpha(const BsParams& p, const GroupWord& w);

/// alpha(u v) == alpha(u) + (m/n)^(-beta(u)) alpha(v), checked exactly.
bool compose_alpha_check(const BsParams& p, const GroupWord& u, const GroupWord& v);

struct PhiValue {
    Rat alpha;
    long beta = 0;
    friend bool operator==(const PhiValue&, const PhiValue&) = default;
    /// "(p/q, b)"
    std::string str() const;
};

PhiValue phi(const BsParams& p, const GroupWord& w);

/// lambda = (1/m) (n/m)^(-beta) alpha
Rat lambda_of(const BsParams& p, const PhiValue& v);
Rat lambda_val(const BsParams& p, const GroupWord& w);

/// Canonical (Britton normal form) representative of a group element.
class GroupElement {
public:
    struct Segment {
        Int exponent;   // power of a preceding the stable letter
        int t_sign;     // +1 for t, -1 for t^-1
        friend bool operator==(const Segment&, const Segment&) = default;
    };

    GroupElement() = default;

    const std::vector<Segment>& segments() const { return segments_; }
    const Int& tail() const { return tail_; }
    bool is_identity() const { return segments_.empty() && tail_ == 0; }

    /// Word length of the normal form: sum of |exponents| plus stable letters.
    Int length() const;

    /// Normal form in the compact word syntax, e.g. "a t A2 T a3"; the
    /// identity prints as "1".
    std::string str() const;

    /// Expands the normal form into a letter word. Exponents must be small.
    GroupWord to_word() const;

    /// Right multiplication by a^e.
    void push_a(const BsParams& p, const Int& e);
    /// Right multiplication by t (sign +1) or t^-1 (sign -1).
    void push_t(const BsParams& p, int sign);
    void push(const BsParams& p, Letter x);

    /// Phi computed directly on the normal form (exponent runs, not letters).
    PhiValue phi(const BsParams& p) const;
    Rat lambda(const BsParams& p) const;

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    /// Shortlex-like total order: length, then segment count, then
    /// exponents and signs left to right, then tail.
    friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

private:
    std::vector<Segment> segments_;
    Int tail_{0};
};

GroupElement britton_reduce(const BsParams& p, const GroupWord& w);
GroupElement multiply(const BsParams& p, const GroupElement& g, const GroupElement& h);
GroupElement inverse(const BsParams& p, const GroupElement& g);
/// The generator x (or its inverse) as an element.
GroupElement generator(const BsParams& p, Letter x);
/// a^e as an element.
GroupElement a_power(const BsParams& p, const Int& e);

}  // namespace bsdomino
