#include "bsdomino/group.hpp"

#include <cctype>

namespace bsdomino {

char letter_char(Letter x) {
    switch (x) {
        case Letter::A: return 'a';
        case Letter::AInv: return 'A';
        case Letter::T: return 't';
        case Letter::TInv: return 'T';
    }
    return '?';
}

namespace {

constexpr long kMaxParsedExponent = 1'000'000;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

GroupWord GroupWord::parse(std::string_view text) {
    GroupWord w;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && is_space(text[i])) ++i;
    };
    for (skip_ws(); i < text.size(); skip_ws()) {
        Letter base;
        switch (text[i]) {
            case 'a': base = Letter::A; break;
            case 'A': base = Letter::AInv; break;
            case 't': base = Letter::T; break;
            case 'T': base = Letter::TInv; break;
            default:
                throw ParseError(std::string("unexpected character '") + text[i] + "'", i);
        }
        const bool upper = base == Letter::AInv || base == Letter::TInv;
        ++i;
        skip_ws();
        bool negative = false;
        std::size_t sign_pos = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
            negative = text[i] == '-';
            ++i;
            skip_ws();
        }
        long exponent = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exponent = 0;
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                exponent = exponent * 10 + (text[i] - '0');
                if (exponent > kMaxParsedExponent)
                    throw ParseError("exponent too large", start);
                ++i;
            }
        } else if (sign_pos != i) {
            throw ParseError("sign without exponent", sign_pos);
        }
        // Uppercase already means inverse; a '-' on it is a redundant marker.
        Letter x = (negative && !upper) ? bsdomino::inverse(base) : base;
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(exponent), x);
    }
    return w;
}

GroupWord GroupWord::inverse() const {
    GroupWord r;
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        r.letters.push_back(bsdomino::inverse(*it));
    return r;
}

std::string GroupWord::str() const {
    std::string s;
    s.reserve(letters.size());
    for (Letter x : letters) s.push_back(letter_char(x));
    return s;
}

GroupWord operator*(const GroupWord& u, const GroupWord& v) {
    GroupWord r = u;
    r.letters.insert(r.letters.end(), v.letters.begin(), v.letters.end());
    return r;
}

long contribution(const GroupWord& w, Letter x) {
    const Letter xi = inverse(x);
    long c = 0;
    for (Letter y : w.letters) {
        if (y == x) ++c;
        else if (y == xi) --c;
    }
    return c;
}

long beta(const GroupWord& w) { return -contribution(w, Letter::T); }

Rat alpha(const BsParams& p, const GroupWord& w) {
    const Rat up(Int(p.m), Int(p.n));    // (m/n)
    const Rat down(Int(p.n), Int(p.m));  // (n/m)
    Rat value;
    Rat step{1};  // (m/n)^(-beta(prefix))
    for (Letter x : w.letters) {
        switch (x) {
            case Letter::A: value += step; break;
            case Letter::AInv: value -= step; break;
            case Letter::T: step *= up; break;     // beta drops by one
            case Letter::TInv: step *= down; break;
        }
    }
    return value;
}

bool compose_alpha_check(const BsParams& p, const GroupWord& u, const GroupWord& v) {
    const Rat lhs = alpha(p, u * v);
    const Rat rhs = alpha(p, u) + Rat::pow(Rat(Int(p.m), Int(p.n)), -beta(u)) * alpha(p, v);
    return lhs == rhs;
}

std::string PhiValue::str() const {
    return "(" + alpha.str() + ", " + std::to_string(beta) + ")";
}

PhiValue phi(const BsParams& p, const GroupWord& w) { return {alpha(p, w), beta(w)}; }

Rat lambda_of(const BsParams& p, const PhiValue& v) {
    return Rat(Int(1), Int(p.m)) * Rat::pow(Rat(Int(p.n), Int(p.m)), -v.beta) * v.alpha;
}

Rat lambda_val(const BsParams& p, const GroupWord& w) { return lambda_of(p, phi(p, w)); }

// ---------------------------------------------------------------------------
// Britton normal form

Int GroupElement::length() const {
    Int len = abs(tail_);
    for (const auto& s : segments_) len += abs(s.exponent) + 1;
    return len;
}

namespace {

void append_a_token(std::string& out, const Int& e) {
    if (e == 0) return;
    if (!out.empty()) out.push_back(' ');
    out.push_back(e > 0 ? 'a' : 'A');
    Int mag = abs(e);
    if (mag != 1) out += mag.get_str();
}

}  // namespace

std::string GroupElement::str() const {
    std::string s;
    for (const auto& seg : segments_) {
        append_a_token(s, seg.exponent);
        if (!s.empty()) s.push_back(' ');
        s.push_back(seg.t_sign > 0 ? 't' : 'T');
    }
    append_a_token(s, tail_);
    return s.empty() ? "1" : s;
}

GroupWord GroupElement::to_word() const {
    GroupWord w;
    auto put_a = [&w](const Int& e) {
        if (abs(e) > kMaxParsedExponent) throw std::length_error("normal form exponent too large to expand");
        long k = e.get_si();
        w.letters.insert(w.letters.end(), static_cast<std::size_t>(k < 0 ? -k : k),
                         k < 0 ? Letter::AInv : Letter::A);
    };
    for (const auto& seg : segments_) {
        put_a(seg.exponent);
        w.letters.push_back(seg.t_sign > 0 ? Letter::T : Letter::TInv);
    }
    put_a(tail_);
    return w;
}

void GroupElement::push_a(const BsParams&, const Int& e) { tail_ += e; }

void GroupElement::push_t(const BsParams& p, int sign) {
    const Int m(p.m), n(p.n);
    if (!segments_.empty()) {
        const Segment& last = segments_.back();
        // t^-1 a^(mj) t = a^(nj)
        if (last.t_sign < 0 && sign > 0 && mpz_divisible_p(tail_.get_mpz_t(), m.get_mpz_t())) {
            Int j = tail_ / m;
            tail_ = last.exponent + n * j;
            segments_.pop_back();
            return;
        }
        // t a^(nj) t^-1 = a^(mj)
        if (last.t_sign > 0 && sign < 0 && mpz_divisible_p(tail_.get_mpz_t(), n.get_mpz_t())) {
            Int j = tail_ / n;
            tail_ = last.exponent + m * j;
            segments_.pop_back();
            return;
        }
    }
    // a^(mq+r) t = a^r t a^(nq);  a^(nq+r) t^-1 = a^r t^-1 a^(mq)
    const Int& modulus = sign > 0 ? m : n;
    const Int& image = sign > 0 ? n : m;
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), tail_.get_mpz_t(), modulus.get_mpz_t());
    segments_.push_back({std::move(r), sign > 0 ? 1 : -1});
    tail_ = q * image;
}

void GroupElement::push(const BsParams& p, Letter x) {
    switch (x) {
        case Letter::A: push_a(p, Int(1)); break;
        case Letter::AInv: push_a(p, Int(-1)); break;
        case Letter::T: push_t(p, 1); break;
        case Letter::TInv: push_t(p, -1); break;
    }
}

PhiValue GroupElement::phi(const BsParams& p) const {
    const Rat up(Int(p.m), Int(p.n));
    const Rat down(Int(p.n), Int(p.m));
    PhiValue v;
    Rat step{1};
    for (const auto& seg : segments_) {
        v.alpha += Rat(seg.exponent) * step;
        if (seg.t_sign > 0) { v.beta -= 1; step *= up; }
        else                { v.beta += 1; step *= down; }
    }
    v.alpha += Rat(tail_) * step;
    return v;
}

Rat GroupElement::lambda(const BsParams& p) const { return lambda_of(p, phi(p)); }

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    if (auto c = compare_int(a.length(), b.length()); c != 0) return c;
    if (auto c = a.segments_.size() <=> b.segments_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.segments_.size(); ++i) {
        const auto& x = a.segments_[i];
        const auto& y = b.segments_[i];
        if (auto c = compare_int(x.exponent, y.exponent); c != 0) return c;
        if (auto c = x.t_sign <=> y.t_sign; c != 0) return c;
    }
    return compare_int(a.tail_, b.tail_);
}

GroupElement britton_reduce(const BsParams& p, const GroupWord& w) {
    GroupElement g;
    for (Letter x : w.letters) g.push(p, x);
    return g;
}

GroupElement multiply(const BsParams& p, const GroupElement& g, const GroupElement& h) {
    GroupElement r = g;
    for (const auto& seg : h.segments()) {
        r.push_a(p, seg.exponent);
        r.push_t(p, seg.t_sign);
    }
    r.push_a(p, h.tail());
    return r;
}

GroupElement inverse(const BsParams& p, const GroupElement& g) {
    GroupElement r;
    r.push_a(p, -g.tail());
    const auto& segs = g.segments();
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
        r.push_t(p, -it->t_sign);
        r.push_a(p, -it->exponent);
    }
    return r;
}

GroupElement generator(const BsParams& p, Letter x) {
    GroupElement g;
    g.push(p, x);
    return g;
}

GroupElement a_power(const BsParams& p, const Int& e) {
    GroupElement g;
    g.push_a(p, e);
    return g;
}

}  // namespace bsdomino
