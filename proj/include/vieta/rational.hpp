#pragma once

#include <optional>
#include <string>

#include "vieta/errors.hpp"
#include "vieta/numeric.hpp"

/*
 * Chord parametrization of rational points.
 *
 * On C(m^2, m^2) the lines y = t(x - m) through (m, 0) cut out
 *
 *     x = m(t^2 - 1) / (t^2 - m^2 t + 1)
 *     y = m(m^2 t^2 - 2t) / (t^2 - m^2 t + 1)
 *
 * and every rational point arises this way, with (m, 0) assigned the
 * parameter t = infinity.  The Pell conic x^2 - 2xy - y^2 = 1 is
 * parametrized through (1, 0) by
 *
 *     x = (t^2 + 1) / (t^2 + 2t - 1),  y = (2t - 2t^2) / (t^2 + 2t - 1);
 *
 * the denominator has irrational roots, so it never vanishes rationally.
 */

namespace vieta {

// mpq_class keeps values canonical (positive denominator, reduced), which
// is what the roundtrip equalities rely on.
struct RatPoint {
    Rat x, y;

    friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

inline std::string to_string(const RatPoint& p) {
    return "(" + p.x.get_str() + ", " + p.y.get_str() + ")";
}

struct SlopeParam {
    std::optional<Rat> t;  // empty = infinity

    static SlopeParam infinity() { return {std::nullopt}; }
    static SlopeParam finite(Rat v) { return {std::move(v)}; }
    bool is_infinite() const { return !t.has_value(); }

    friend bool operator==(const SlopeParam&, const SlopeParam&) = default;
};

inline bool on_cm2(const Int& m, const RatPoint& p) {
    Int m2 = m * m;
    return p.x * p.x - m2 * p.x * p.y + p.y * p.y == Rat(m2);
}

inline RatPoint point_from_t(const Int& m, const SlopeParam& s) {
    if (m < 1) throw InputError("point_from_t: m must be positive");
    if (s.is_infinite()) return {Rat(m), Rat(0)};
    const Rat& t = *s.t;
    Rat m2(m * m);
    Rat den = t * t - m2 * t + 1;
    if (den == 0) throw DegenerateDenominator("point_from_t: t^2 - m^2 t + 1 = 0");
    Rat x = Rat(m) * (t * t - 1) / den;
    Rat y = Rat(m) * (m2 * t * t - 2 * t) / den;
    return {x, y};
}

// Slope of the chord through (m, 0).  Points on the vertical x = m have no
// finite slope and map to infinity; for the base point itself this inverts
// point_from_t, for (m, m^3) it is the projective-closure value.
inline SlopeParam t_from_point(const Int& m, const RatPoint& p) {
    if (m < 1) throw InputError("t_from_point: m must be positive");
    if (!on_cm2(m, p)) throw PointNotOnConic("t_from_point: point not on the conic");
    if (p.x == Rat(m)) return SlopeParam::infinity();
    return SlopeParam::finite(p.y / (p.x - Rat(m)));
}

inline bool on_pell_vieta(const RatPoint& p) {
    return p.x * p.x - 2 * p.x * p.y - p.y * p.y == 1;
}

inline RatPoint pell_point_from_t(const Rat& t) {
    Rat den = t * t + 2 * t - 1;
    // t^2 + 2t - 1 has roots -1 +- sqrt(2): no rational zero.
    Rat x = (t * t + 1) / den;
    Rat y = (2 * t - 2 * t * t) / den;
    return {x, y};
}

}  // namespace vieta
