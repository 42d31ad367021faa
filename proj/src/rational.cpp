#include "bsdomino/rational.hpp"

#include <cctype>
#include <ostream>

namespace bsdomino {

Rat::Rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool parse_int(std::string_view s, Int& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    text = trim(text);
    Int num, den{1};
    auto slash = text.find('/');
    bool ok = slash == std::string_view::npos
                  ? parse_int(text, num)
                  : parse_int(text.substr(0, slash), num) && parse_int(text.substr(slash + 1), den);
    if (!ok) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
}

Int Rat::floor() const {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Int Rat::ceil() const {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string Rat::str() const {
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::pow(const Rat& base, long exp) {
    if (exp < 0) {
        if (base.is_zero()) throw std::domain_error("zero to a negative power");
        return pow(Rat(1) / base, -exp);
    }
    Int num, den;
    mpz_pow_ui(num.get_mpz_t(), base.v_.get_num_mpz_t(), static_cast<unsigned long>(exp));
    mpz_pow_ui(den.get_mpz_t(), base.v_.get_den_mpz_t(), static_cast<unsigned long>(exp));
    return Rat(num, den);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

std::string IntVec2::str() const { return "(" + x1.get_str() + "," + x2.get_str() + ")"; }

std::string RatVec2::str() const { return x1.str() + "," + x2.str(); }

RatVec2 RatVec2::parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos)
        throw std::invalid_argument("expected 'p/q,p/q', got '" + std::string(text) + "'");
    return {Rat::parse(text.substr(0, comma)), Rat::parse(text.substr(comma + 1))};
}

IntVec2 floor(const RatVec2& v) { return {v.x1.floor(), v.x2.floor()}; }

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace bsdomino
