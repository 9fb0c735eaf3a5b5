#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <utility>

namespace vieta {

// All coordinate and coefficient arithmetic is exact. Chain points grow
// like eps^n, so fixed-width integers are never enough.
using Int = mpz_class;
using Rat = mpq_class;

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Exact square root when n is a perfect square; (found, root).
inline std::pair<bool, Int> exact_sqrt(const Int& n) {
    if (n < 0) return {false, 0};
    Int r = isqrt(n);
    return {r * r == n, r};
}

inline int sign(const Int& n) { return mpz_sgn(n.get_mpz_t()); }

inline Rat make_rat(Int num, Int den) {
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline std::string to_string(const Int& n) { return n.get_str(); }
inline std::string to_string(const Rat& r) { return r.get_str(); }

}  // namespace vieta
