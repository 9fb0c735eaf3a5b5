#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vieta/errors.hpp"
#include "vieta/numeric.hpp"

namespace vieta {

// Trial division is all the scans need; anything past the cap is out of
// the tool's scale.
inline const Int kFactorizationCap = Int("1000000000000");  // 10^12

// Prime factorization of n >= 1 by trial division, smallest prime first.
inline std::vector<std::pair<Int, unsigned>> trial_factorize(Int n) {
    if (n < 1) throw InputError("trial_factorize: n must be >= 1");
    if (n > kFactorizationCap)
        throw FactorizationTooLarge("trial_factorize: n exceeds 10^12");
    std::vector<std::pair<Int, unsigned>> out;
    auto strip = [&](const Int& p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// q = A^2 + B^2 is solvable iff every prime = 3 (mod 4) divides q to an
// even power.  Witness search runs A = 1, 2, ... and reports the first
// hit; a square q always yields (sqrt(q), 0).
inline std::optional<std::pair<Int, Int>> two_square_rep(const Int& q) {
    if (q < 1) throw InputError("two_square_rep: q must be >= 1");
    for (const auto& [p, e] : trial_factorize(q)) {
        if (p % 4 == 3 && e % 2 == 1) return std::nullopt;
    }
    for (Int a = 1; a * a <= q; ++a) {
        auto [ok, b] = exact_sqrt(q - a * a);
        if (ok) return std::make_pair(a, b);
    }
    throw InternalError("two_square_rep: criterion and search disagree");
}

// 4q = c^2 + 3 d^2.  Solvable iff every prime = 2 (mod 3) divides q to an
// even power (2 itself included); c and d then automatically share parity
// because c^2 + 3d^2 = 0 (mod 4) forces it.
inline std::optional<std::pair<Int, Int>> rep_c2_plus_3d2(const Int& four_q) {
    if (four_q < 4 || four_q % 4 != 0)
        throw InputError("rep_c2_plus_3d2: argument must be 4q for q >= 1");
    Int q = four_q / 4;
    for (const auto& [p, e] : trial_factorize(q)) {
        if (p % 3 == 2 && e % 2 == 1) return std::nullopt;
    }
    for (Int d = 0; 3 * d * d <= four_q; ++d) {
        auto [ok, c] = exact_sqrt(four_q - 3 * d * d);
        if (ok) return std::make_pair(c, d);
    }
    throw InternalError("rep_c2_plus_3d2: criterion and search disagree");
}

}  // namespace vieta
