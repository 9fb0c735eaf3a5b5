#pragma once

#include <random>
#include <vector>

#include "vieta/conic.hpp"
#include "vieta/numeric.hpp"

// Independent reference implementations used to check the library; these
// deliberately avoid its solving shortcuts.

namespace testutil {

// Plain double loop over the box, no discriminant trick.
inline std::vector<vieta::IntPoint> brute_box(const vieta::Conic& c, long bound) {
    std::vector<vieta::IntPoint> hits;
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y) {
            vieta::IntPoint pt{x, y};
            if (vieta::contains(c, pt)) hits.push_back(pt);
        }
    return hits;
}

// Consecutive odd-indexed Fibonacci pairs with both entries <= bound,
// generated straight from the recurrence (the n = 0 pair is (1,1)).
inline std::vector<vieta::IntPoint> fib_pairs_up_to(const vieta::Int& bound) {
    std::vector<vieta::IntPoint> out;
    vieta::Int lo = 1, hi = 1;  // F_{-1}, F_1
    while (lo <= bound && hi <= bound) {
        out.push_back({lo, hi});
        // next odd-indexed pair: F_{2n+1} = 3 F_{2n-1} - F_{2n-3}
        vieta::Int next = 3 * hi - lo;
        lo = hi;
        hi = next;
    }
    return out;
}

inline std::mt19937_64 rng(unsigned seed = 0x5eed) { return std::mt19937_64(seed); }

inline long rand_in(std::mt19937_64& g, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(g);
}

}  // namespace testutil
