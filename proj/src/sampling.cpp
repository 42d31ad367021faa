#include "bsdomino/sampling.hpp"

namespace bsdomino {

GroupWord random_word(Rng& rng, std::size_t length) {
    std::uniform_int_distribution<int> pick(0, 3);
    GroupWord w;
    w.letters.reserve(length);
    for (std::size_t i = 0; i < length; ++i) w.letters.push_back(static_cast<Letter>(pick(rng)));
    return w;
}

GroupWord random_trivial_word(const BsParams& p, Rng& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    if (kind(rng) == 0) {
        Letter x = static_cast<Letter>(std::uniform_int_distribution<int>(0, 3)(rng));
        return GroupWord({x, inverse(x)});
    }
    // t^-1 a^m t a^-n
    GroupWord r;
    r.letters.push_back(Letter::TInv);
    r.letters.insert(r.letters.end(), static_cast<std::size_t>(p.m), Letter::A);
    r.letters.push_back(Letter::T);
    r.letters.insert(r.letters.end(), static_cast<std::size_t>(p.n), Letter::AInv);
    if (std::bernoulli_distribution(0.5)(rng)) r = r.inverse();
    std::uniform_int_distribution<std::size_t> shift(0, r.size() - 1);
    std::size_t s = shift(rng);
    GroupWord rotated;
    rotated.letters.insert(rotated.letters.end(), r.letters.begin() + static_cast<long>(s), r.letters.end());
    rotated.letters.insert(rotated.letters.end(), r.letters.begin(), r.letters.begin() + static_cast<long>(s));
    return rotated;
}

GroupWord insert_relator(const BsParams& p, const GroupWord& w, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pos(0, w.size());
    const std::size_t at = pos(rng);
    const GroupWord r = random_trivial_word(p, rng);
    GroupWord out;
    out.letters.reserve(w.size() + r.size());
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + static_cast<long>(at));
    out.letters.insert(out.letters.end(), r.letters.begin(), r.letters.end());
    out.letters.insert(out.letters.end(), w.letters.begin() + static_cast<long>(at), w.letters.end());
    return out;
}

Rat random_rat_in_unit(Rng& rng, const Int& lo, long max_den) {
    const long den = std::uniform_int_distribution<long>(1, max_den)(rng);
    const long num = std::uniform_int_distribution<long>(0, den)(rng);
    return Rat(lo) + Rat(Int(num), Int(den));
}

RatVec2 random_point(Rng& rng, const AffinePiece& piece, long max_den) {
    return {random_rat_in_unit(rng, piece.corner.x1, max_den), random_rat_in_unit(rng, piece.corner.x2, max_den)};
}

}  // namespace bsdomino
