#include "bsdomino/balrep.hpp"

#include <algorithm>

namespace bsdomino {

IntVec2 b_k(const RatVec2& x, const Rat& z, long k) {
    const Rat hi = z + Rat(k);
    const Rat lo = z + Rat(k - 1);
    return floor(hi * x) - floor(lo * x);
}

BalancedWindow window(const RatVec2& x, const Rat& z, long k_lo, long k_hi) {
    if (k_lo > k_hi) throw BadRange("window: k_lo > k_hi");
    BalancedWindow w{x, z, k_lo, k_hi, {}};
    w.values.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    // Consecutive terms share a floor; walk the range once.
    IntVec2 prev = floor((z + Rat(k_lo - 1)) * x);
    for (long k = k_lo; k <= k_hi; ++k) {
        IntVec2 cur = floor((z + Rat(k)) * x);
        w.values.push_back(cur - prev);
        prev = std::move(cur);
    }
    return w;
}

Rat average_error(const RatVec2& x, const Rat& z, long K) {
    if (K < 0) throw BadRange("average_error: K < 0");
    const auto w = window(x, z, -K, K);
    IntVec2 sum;
    for (const auto& v : w.values) sum += v;
    const Rat count(2 * K + 1);
    RatVec2 err = RatVec2(sum) * (Rat(1) / count) - x;
    auto absr = [](const Rat& r) { return r < Rat(0) ? -r : r; };
    return std::max(absr(err.x1), absr(err.x2));
}

}  // namespace bsdomino
