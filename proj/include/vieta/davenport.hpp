#pragma once

#include "vieta/errors.hpp"
#include "vieta/numeric.hpp"
#include "vieta/oracle.hpp"

/*
 * Two-sided minima of |x^2 - (t^2-1) y^2| over non-square values.
 *
 * Positive side: any attained non-square value is >= 2t+2, and 2t+2 is
 * attained at (t+1, 1) because (t+1)^2 - (t^2-1) = 2t+2.  Negative side:
 * the floor is 2t-2, attained at (t-1, 1).  (A frequently quoted version
 * bounds both sides by 2t+2; (t-1, 1) shows the negative side is lower.)
 *
 * The bounds are returned only after an exhaustive scan has confirmed
 * that no smaller non-square value is attained on either side.
 */

namespace vieta {

struct DavenportMinima {
    Int plus_nu;  // 2t+2
    IntPoint plus_witness;
    Int minus_nu;  // 2t-2
    IntPoint minus_witness;
};

inline DavenportMinima davenport_min_norms(const Int& t) {
    if (t < 2) throw InputError("davenport_min_norms: t must be >= 2");
    const Int m = t * t - 1;

    NormScanReport scan = norm_scan(m, 2 * t + 2);
    for (const auto& e : scan.entries) {
        if (is_perfect_square(e.nu)) continue;
        if (e.nu < 2 * t + 2 && e.plus)
            throw InternalError("davenport_min_norms: non-square + value below 2t+2 at nu=" +
                                e.nu.get_str());
        if (e.nu < 2 * t - 2 && e.minus)
            throw InternalError("davenport_min_norms: non-square - value below 2t-2 at nu=" +
                                e.nu.get_str());
    }

    DavenportMinima out{2 * t + 2, {t + 1, 1}, 2 * t - 2, {t - 1, 1}};
    Int plus_val = out.plus_witness.x * out.plus_witness.x - m;
    Int minus_val = out.minus_witness.x * out.minus_witness.x - m;
    if (plus_val != out.plus_nu || minus_val != -out.minus_nu)
        throw InternalError("davenport_min_norms: identity witness fails its equation");
    if (!scan.at(out.plus_nu).plus || !scan.at(out.minus_nu).minus)
        throw InternalError("davenport_min_norms: scan did not attain the bound");
    return out;
}

}  // namespace vieta
