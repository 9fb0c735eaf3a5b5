#pragma once

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "vieta/conic.hpp"
#include "vieta/errors.hpp"
#include "vieta/numeric.hpp"

/*
 * Exact arithmetic in Z[sqrt(m)] and, for m = 1 (mod 4), its half-integer
 * extension: elements are (u + v sqrt(m))/d with d in {1, 2}.
 *
 * The radicands of interest have parametrized fundamental units:
 *
 *     m = n^2 - 1   eps = n + sqrt(m)                         N eps = 1
 *     m = n^2 - 4   eps = (n + sqrt(m))/2   (n odd)           N eps = 1
 *     m = n^2 + 2   eps = n^2 + 1 + n sqrt(m),                N eps = 1
 *                   delta = n + sqrt(m),  delta^2 = 2 eps,    N delta = -2
 *
 * Multiplying xi by a power of eps moves |xi| into any prescribed
 * half-open window of multiplicative width eps^2; combined with the
 * Cassels inequality x + y <= s + t/s this pins the coefficients of some
 * associate of xi to
 *
 *     |a| <= (sqrt(nu)/2) B,   |b| <= (sqrt(nu)/(2 sqrt(m))) B,
 *
 * where nu = |N xi| and B = sqrt(eps) + 1/sqrt(eps).  B^2 = tr(eps) + 2 is
 * rational, so both bounds are decided exactly by comparing squares.
 * Equality occurs precisely when nu*eps is a square in the ring.
 */

namespace vieta {

struct QuadElt {
    Int u, v;  // value is (u + v sqrt(m)) / d
    Int m;
    int d = 1;

    QuadElt(Int u_, Int v_, Int m_, int d_ = 1)
        : u(std::move(u_)), v(std::move(v_)), m(std::move(m_)), d(d_) {
        if (m < 2 || is_perfect_square(m))
            throw InputError("QuadElt: radicand must be a positive non-square");
        if (d != 1 && d != 2) throw InputError("QuadElt: denominator must be 1 or 2");
        if (d == 2) {
            if (u % 2 == 0 && v % 2 == 0) {
                u /= 2;
                v /= 2;
                d = 1;
            } else if ((u - v) % 2 != 0 || m % 4 != 1) {
                throw InputError("QuadElt: half coordinates need u = v (mod 2) and m = 1 (mod 4)");
            }
        }
    }

    static QuadElt integer(Int n, Int m) { return QuadElt(std::move(n), 0, std::move(m)); }

    bool is_zero() const { return u == 0 && v == 0; }

    friend bool operator==(const QuadElt&, const QuadElt&) = default;
};

namespace detail {
inline void require_same_radicand(const QuadElt& a, const QuadElt& b) {
    if (a.m != b.m) throw RadicandMismatch("elements live over different radicands");
}

// Reduce (U + V sqrt(m))/D with D in {1,2,4} into a valid QuadElt.
inline QuadElt make_elt(Int U, Int V, const Int& m, int D) {
    while (D > 1 && U % 2 == 0 && V % 2 == 0) {
        U /= 2;
        V /= 2;
        D /= 2;
    }
    if (D == 4) throw InternalError("QuadElt: product left the order");
    return QuadElt(std::move(U), std::move(V), m, D);
}
}  // namespace detail

inline QuadElt mul(const QuadElt& a, const QuadElt& b) {
    detail::require_same_radicand(a, b);
    Int U = a.u * b.u + a.v * b.v * a.m;
    Int V = a.u * b.v + a.v * b.u;
    return detail::make_elt(std::move(U), std::move(V), a.m, a.d * b.d);
}

inline QuadElt add(const QuadElt& a, const QuadElt& b) {
    detail::require_same_radicand(a, b);
    int L = std::max(a.d, b.d);
    return detail::make_elt(a.u * (L / a.d) + b.u * (L / b.d),
                            a.v * (L / a.d) + b.v * (L / b.d), a.m, L);
}

inline QuadElt sub(const QuadElt& a, const QuadElt& b) {
    detail::require_same_radicand(a, b);
    int L = std::max(a.d, b.d);
    return detail::make_elt(a.u * (L / a.d) - b.u * (L / b.d),
                            a.v * (L / a.d) - b.v * (L / b.d), a.m, L);
}

inline QuadElt conj(const QuadElt& a) { return QuadElt(a.u, -a.v, a.m, a.d); }

inline QuadElt negate(const QuadElt& a) { return QuadElt(-a.u, -a.v, a.m, a.d); }

inline QuadElt scale(const Int& c, const QuadElt& a) {
    return detail::make_elt(c * a.u, c * a.v, a.m, a.d);
}

// N((u + v sqrt(m))/d) = (u^2 - m v^2)/d^2, always a rational integer on
// valid elements.
inline Int norm(const QuadElt& a) {
    Int num = a.u * a.u - a.m * a.v * a.v;
    if (a.d == 2) {
        if (num % 4 != 0) throw InternalError("norm: non-integral norm");
        return num / 4;
    }
    return num;
}

// Exact sign of the real number (u + v sqrt(m))/d.
inline int sign_of(const QuadElt& a) {
    int su = sign(a.u), sv = sign(a.v);
    if (sv == 0) return su;
    if (su == 0) return sv;
    if (su == sv) return su;
    // Opposite signs: compare u^2 against m v^2.
    Int diff = a.u * a.u - a.m * a.v * a.v;
    return su > 0 ? sign(diff) : -sign(diff);
}

inline int compare(const QuadElt& a, const QuadElt& b) { return sign_of(sub(a, b)); }

inline QuadElt pow(QuadElt base, unsigned long e) {
    QuadElt acc = QuadElt::integer(1, base.m);
    while (e) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return acc;
}

// eps^j for a norm +1 unit; negative exponents use eps^{-1} = conj(eps).
inline QuadElt unit_pow(const QuadElt& eps, long long j) {
    if (norm(eps) != 1) throw NotAUnit("unit_pow: norm must be +1");
    if (j >= 0) return pow(eps, static_cast<unsigned long>(j));
    return pow(conj(eps), static_cast<unsigned long>(-j));
}

inline std::string to_string(const QuadElt& a) {
    std::string core;
    if (a.v == 0) return a.u.get_str();
    if (a.u != 0) core = a.u.get_str() + (a.v > 0 ? " + " : " - ");
    else if (a.v < 0) core = "-";
    Int av = abs(a.v);
    if (av != 1) core += av.get_str() + "*";
    core += "sqrt(" + a.m.get_str() + ")";
    if (a.d == 2) return "(" + core + ")/2";
    return core;
}

// ---------------------------------------------------------------------
// Parametrized units of Richaud-Degert type.

struct RdFamily {
    enum class Kind { NsqMinus1, NsqMinus4, NsqPlus2 };
    Kind kind;
    Int n;

    Int radicand() const {
        switch (kind) {
            case Kind::NsqMinus1: return n * n - 1;
            case Kind::NsqMinus4: return n * n - 4;
            case Kind::NsqPlus2: return n * n + 2;
        }
        return 0;
    }

    void validate() const {
        switch (kind) {
            case Kind::NsqMinus1:
                if (n < 2) throw InvalidFamily("n^2-1 family needs n >= 2");
                return;
            case Kind::NsqMinus4:
                if (n < 3 || n % 2 == 0)
                    throw InvalidFamily("n^2-4 family needs odd n >= 3");
                return;
            case Kind::NsqPlus2:
                if (n < 1) throw InvalidFamily("n^2+2 family needs n >= 1");
                return;
        }
        throw InvalidFamily("unknown family");
    }
};

inline const char* to_string(RdFamily::Kind k) {
    switch (k) {
        case RdFamily::Kind::NsqMinus1: return "n2-1";
        case RdFamily::Kind::NsqMinus4: return "n2-4";
        case RdFamily::Kind::NsqPlus2: return "n2+2";
    }
    return "?";
}

// The fundamental unit of the family, always of norm +1.
inline QuadElt rd_unit(const RdFamily& f) {
    f.validate();
    switch (f.kind) {
        case RdFamily::Kind::NsqMinus1: return QuadElt(f.n, 1, f.radicand());
        case RdFamily::Kind::NsqMinus4: return QuadElt(f.n, 1, f.radicand(), 2);
        case RdFamily::Kind::NsqPlus2: return QuadElt(f.n * f.n + 1, f.n, f.radicand());
    }
    throw InvalidFamily("unknown family");
}

// delta = n + sqrt(n^2+2): norm -2, delta^2 = 2 eps.
inline QuadElt rd_delta(const Int& n) {
    if (n < 1) throw InputError("rd_delta: n must be positive");
    return QuadElt(n, 1, n * n + 2);
}

// Recognizes radicands of the closed-form shapes, preferring n^2 - 1.
inline std::optional<RdFamily> rd_family_of(const Int& m) {
    if (m < 2 || is_perfect_square(m)) return std::nullopt;
    {
        Int n = isqrt(m + 1);
        if (n * n - 1 == m && n >= 2) return RdFamily{RdFamily::Kind::NsqMinus1, n};
    }
    if (m > 2) {
        Int n = isqrt(m - 2);
        if (n * n + 2 == m && n >= 1) return RdFamily{RdFamily::Kind::NsqPlus2, n};
    }
    {
        Int n = isqrt(m + 4);
        if (n * n - 4 == m && n >= 3 && n % 2 == 1)
            return RdFamily{RdFamily::Kind::NsqMinus4, n};
    }
    return std::nullopt;
}

// Smallest integral unit > 1 with norm +1 that the closed forms provide.
// For m = n^2 - 4 the unit itself is half-integral and eps^3 =
// (n^3 - 3n)/2 + ((n^2-1)/2) sqrt(m) is the integral generator.
inline std::optional<QuadElt> rd_integral_unit(const Int& m) {
    if (m < 2 || is_perfect_square(m)) return std::nullopt;
    {
        Int n = isqrt(m + 1);
        if (n * n - 1 == m && n >= 2) return QuadElt(n, 1, m);
    }
    if (m > 2) {
        Int n = isqrt(m - 2);
        if (n * n + 2 == m && n >= 1) return QuadElt(n * n + 1, n, m);
    }
    {
        Int n = isqrt(m + 4);
        if (n * n - 4 == m && n >= 3 && n % 2 == 1)
            return QuadElt((n * n * n - 3 * n) / 2, (n * n - 1) / 2, m);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// Unit-power reduction.

struct ReductionResult {
    long long j;
    QuadElt reduced;  // xi * eps^j
    QuadElt unit;
    Int nu;  // |N xi|
    // Bound re-verification data: B = sqrt(eps) + 1/sqrt(eps), so
    // B^2 = tr(eps) + 2 and both coefficient bounds are square-comparable.
    std::string bound_formula = "B = sqrt(eps) + 1/sqrt(eps)";
};

namespace detail {

// log of |n| for the seeding estimate; exactness comes later.
inline double log_abs(const Int& n) {
    if (n == 0) return -1e300;
    signed long e;
    double f = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(std::fabs(f)) + static_cast<double>(e) * std::log(2.0);
}

inline double log_abs(const QuadElt& a) {
    if (a.is_zero()) return -1e300;
    double ld = a.d == 2 ? std::log(2.0) : 0.0;
    if (a.v == 0) return log_abs(a.u) - ld;
    if (a.u == 0) return log_abs(a.v) + 0.5 * log_abs(a.m) - ld;
    double t1 = log_abs(a.u);
    double t2 = log_abs(a.v) + 0.5 * log_abs(a.m);
    if (sign(a.u) * sign(a.v) > 0) {
        double hi = std::max(t1, t2), lo = std::min(t1, t2);
        return hi + std::log1p(std::exp(lo - hi)) - ld;
    }
    // Cancellation: |a| = |N a| / |conj a|, and conj a has aligned signs.
    return log_abs(norm(a)) - log_abs(conj(a));
}

}  // namespace detail

// Finds j with |xi eps^j|^2 in the window (nu/eps, nu*eps].  The window is
// one eps^2-step wide, so j is unique; a float log seeds it and exact sign
// tests settle it.
inline ReductionResult reduce_by_unit(const QuadElt& xi, const QuadElt& eps) {
    detail::require_same_radicand(xi, eps);
    if (xi.is_zero()) throw ZeroElement("reduce_by_unit: xi must be nonzero");
    if (norm(eps) != 1) throw NotAUnit("reduce_by_unit: unit must have norm +1");
    if (sign_of(sub(eps, QuadElt::integer(1, eps.m))) <= 0)
        throw NotAUnit("reduce_by_unit: unit must exceed 1");

    const Int nu = abs(norm(xi));
    const QuadElt nu_elt = QuadElt::integer(nu, xi.m);

    long long j = std::llround((0.5 * detail::log_abs(nu) - detail::log_abs(xi)) /
                               detail::log_abs(eps));
    QuadElt alpha = mul(xi, unit_pow(eps, j));

    auto above_lower = [&](const QuadElt& a) {
        // a^2 > nu/eps  <=>  a^2 * eps > nu
        return sign_of(sub(mul(mul(a, a), eps), nu_elt)) > 0;
    };
    auto within_upper = [&](const QuadElt& a) {
        // a^2 <= nu*eps
        return sign_of(sub(scale(nu, eps), mul(a, a))) >= 0;
    };

    int fuel = 64;
    while (!above_lower(alpha)) {
        alpha = mul(alpha, eps);
        ++j;
        if (--fuel == 0) throw InternalError("reduce_by_unit: window search diverged");
    }
    while (!within_upper(alpha)) {
        alpha = mul(alpha, conj(eps));
        --j;
        if (--fuel == 0) throw InternalError("reduce_by_unit: window search diverged");
    }
    return {j, std::move(alpha), eps, nu};
}

// Exact verification of |a| <= (sqrt(nu)/2) B and |b| <= (sqrt(nu)/(2
// sqrt(m))) B for reduced = a + b sqrt(m), comparing squared quantities.
inline bool reduction_bounds_hold(const ReductionResult& r) {
    // B^2 = (2 u_eps + 2 d_eps) / d_eps
    Rat Bsq = make_rat(2 * r.unit.u + 2 * r.unit.d, r.unit.d);
    Rat rhs = Rat(r.nu) * Bsq;
    Rat a_sq4 = make_rat(4 * r.reduced.u * r.reduced.u, r.reduced.d * r.reduced.d);
    Rat b_sq4m = make_rat(4 * r.reduced.v * r.reduced.v * r.reduced.m,
                          r.reduced.d * r.reduced.d);
    return a_sq4 <= rhs && b_sq4m <= rhs;
}

// ---------------------------------------------------------------------
// Small-norm classification for the three families.

enum class NormShape { ForcedSquare, ForcedExceptional, NoConstraint };

inline const char* to_string(NormShape s) {
    switch (s) {
        case NormShape::ForcedSquare: return "ForcedSquare";
        case NormShape::ForcedExceptional: return "ForcedExceptional";
        case NormShape::NoConstraint: return "NoConstraint";
    }
    return "?";
}

struct SmallNormVerdict {
    NormShape shape;
    std::optional<Int> exceptional;  // set for ForcedExceptional
    Int threshold;                   // verdict applies to nu < threshold
};

// The shape any solvable nu must have below the family threshold:
//   m = n^2-1:  nu is a perfect square                      (nu < 2n-2)
//   m = n^2-4:  nu = n-2 or a perfect square                (nu < n+2)
//   m = n^2+2:  nu = 2n-1, or nu or 2nu a perfect square    (nu < 2n+1)
// For ForcedSquare on the n^2+2 family "square" means nu or 2nu square.
inline SmallNormVerdict small_norm_classify(const RdFamily& f, const Int& nu) {
    f.validate();
    if (nu < 1) throw InputError("small_norm_classify: nu must be positive");
    Int threshold;
    switch (f.kind) {
        case RdFamily::Kind::NsqMinus1:
            threshold = 2 * f.n - 2;
            break;
        case RdFamily::Kind::NsqMinus4:
            if (f.n < 7) throw ParameterOutOfTheoremRange("n^2-4 classification needs odd n >= 7");
            threshold = f.n + 2;
            break;
        case RdFamily::Kind::NsqPlus2:
            if (f.n < 5) throw ParameterOutOfTheoremRange("n^2+2 classification needs n >= 5");
            threshold = 2 * f.n + 1;
            break;
    }
    if (nu >= threshold) return {NormShape::NoConstraint, std::nullopt, threshold};
    if (f.kind == RdFamily::Kind::NsqMinus4 && nu == f.n - 2)
        return {NormShape::ForcedExceptional, f.n - 2, threshold};
    if (f.kind == RdFamily::Kind::NsqPlus2 && nu == 2 * f.n - 1)
        return {NormShape::ForcedExceptional, 2 * f.n - 1, threshold};
    return {NormShape::ForcedSquare, std::nullopt, threshold};
}

// Truth of the full disjunction, used to check scans against the theorems.
inline bool shape_allows(const RdFamily& f, const Int& nu) {
    switch (f.kind) {
        case RdFamily::Kind::NsqMinus1: return is_perfect_square(nu);
        case RdFamily::Kind::NsqMinus4: return nu == f.n - 2 || is_perfect_square(nu);
        case RdFamily::Kind::NsqPlus2:
            return nu == 2 * f.n - 1 || is_perfect_square(nu) || is_perfect_square(2 * nu);
    }
    return false;
}

// ---------------------------------------------------------------------
// The finer two-case reduction over m = n^2 + 2.
//
// eps ~ 2n^2 is too large for the plain window to force |b| <= 1, so the
// target window is (nu/sqrt(eps), nu*sqrt(eps)] for alpha^2.  The eps-orbit
// steps over it half the time; multiplying by delta (norm -2, delta^2 =
// 2 eps) or its conjugate shifts by half a step into the analogous window
// for 2*nu.  Either way the landed element has |b| <= 1 whenever
// nu < 2n+1, with B' = eps^(1/4) + eps^(-1/4) doing the bounding.

struct HalfWindowReduction {
    QuadElt reduced;
    Int nu_effective;  // nu, or 2*nu when a delta factor was used
    bool used_delta;
    long long j;
};

inline HalfWindowReduction half_window_reduce(const QuadElt& xi, const Int& n) {
    if (n < 5) throw ParameterOutOfTheoremRange("half_window_reduce: needs n >= 5");
    if (xi.m != n * n + 2) throw RadicandMismatch("half_window_reduce: radicand must be n^2+2");
    if (xi.is_zero()) throw ZeroElement("half_window_reduce: xi must be nonzero");

    const QuadElt eps = rd_unit({RdFamily::Kind::NsqPlus2, n});
    const QuadElt delta = rd_delta(n);
    const Int nu = abs(norm(xi));

    auto in_half_window = [&](const QuadElt& a, const Int& target_nu) {
        QuadElt a4 = mul(mul(a, a), mul(a, a));
        Int nu2 = target_nu * target_nu;
        // a^4 * eps > nu^2  and  a^4 <= nu^2 * eps
        bool lower = sign_of(sub(mul(a4, eps), QuadElt::integer(nu2, a.m))) > 0;
        bool upper = sign_of(sub(scale(nu2, eps), a4)) >= 0;
        return lower && upper;
    };

    ReductionResult base = reduce_by_unit(xi, eps);
    QuadElt alpha = base.reduced;
    if (in_half_window(alpha, nu)) return {std::move(alpha), nu, false, base.j};

    // alpha^2 sits in (nu/eps, nu*eps] but outside the half window: shift
    // by half a step with delta or its conjugate.
    QuadElt a4 = mul(mul(alpha, alpha), mul(alpha, alpha));
    bool below = sign_of(sub(QuadElt::integer(nu * nu, alpha.m), mul(a4, eps))) >= 0;
    QuadElt beta = below ? mul(alpha, delta) : mul(alpha, conj(delta));
    if (!in_half_window(beta, 2 * nu))
        throw InternalError("half_window_reduce: delta shift missed the window");
    return {std::move(beta), 2 * nu, true, base.j};
}

// ---------------------------------------------------------------------
// Points on C(k,k) as ring elements of norm k.
//
// Even k = 2*kappa: alpha = (x - kappa y) + y sqrt(kappa^2 - 1).
// Odd k: alpha = ((2x - ky) + y sqrt(k^2 - 4)) / 2.

inline QuadElt point_to_element(const Int& k, const IntPoint& pt) {
    if (abs(k) <= 2) throw DegenerateK("point_to_element: needs k^2 > 4");
    Conic c(k, k);
    detail::require_on_conic(c, pt, "point_to_element");
    if (k % 2 == 0) {
        Int kappa = k / 2;
        return QuadElt(pt.x - kappa * pt.y, pt.y, kappa * kappa - 1);
    }
    return QuadElt(2 * pt.x - k * pt.y, pt.y, k * k - 4, 2);
}

inline IntPoint element_to_point(const Int& k, const QuadElt& a) {
    if (abs(k) <= 2) throw DegenerateK("element_to_point: needs k^2 > 4");
    IntPoint pt{0, 0};
    if (k % 2 == 0) {
        Int kappa = k / 2;
        if (a.m != kappa * kappa - 1)
            throw RadicandMismatch("element_to_point: wrong radicand for even k");
        if (a.d != 1) throw InputError("element_to_point: even k has integral elements");
        pt = {a.u + kappa * a.v, a.v};
    } else {
        if (a.m != k * k - 4)
            throw RadicandMismatch("element_to_point: wrong radicand for odd k");
        Int U = a.u * (2 / a.d), V = a.v * (2 / a.d);
        pt = {(U + k * V) / 2, V};
    }
    detail::require_on_conic(Conic(k, k), pt, "element_to_point");
    return pt;
}

// Cassels: x <= s, y <= s, x y <= t, s > 0 imply x + y <= s + t/s.
// Evaluates the conclusion exactly; the proof is (x-s)(y-s) >= 0.
inline bool cassels_combine(const Rat& x, const Rat& y, const Rat& s, const Rat& t) {
    if (s <= 0 || x < 0 || y < 0 || x > s || y > s || x * y > t)
        throw PreconditionViolated("cassels_combine: hypotheses violated");
    return x + y <= s + t / s;
}

}  // namespace vieta
