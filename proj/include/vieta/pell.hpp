#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vieta/conic.hpp"
#include "vieta/errors.hpp"
#include "vieta/numeric.hpp"
#include "vieta/qfield.hpp"
#include "vieta/rational.hpp"

/*
 * The Pell conic x^2 - m y^2 = 1 and its action on C(k,k).
 *
 * Completing the square writes C(k,k) as (x - ky/2)^2 - ((k/2)^2 - 1) y^2
 * = k, so points correspond to ring elements of norm k; multiplying by the
 * fundamental unit is the integral map (x, y) |-> (kx - y, x), valid for
 * odd k as well even though the unit itself is half-integral there.
 * C(4,4) and x^2 - 3y^2 = 1 are in explicit bijection: (a,b) |->
 * (a/2 - b, b/2), inverse (x,y) |-> (2x + 4y, 2y).
 *
 * Rational points on any of these conics form a group once a neutral
 * point N is chosen: P + Q is the second intersection of the parallel to
 * PQ through N.
 */

namespace vieta {

struct PellConic {
    Int m;    // positive non-square radicand
    int rhs;  // +1 or -1

    PellConic(Int m_, int rhs_ = 1) : m(std::move(m_)), rhs(rhs_) {
        if (m < 2 || is_perfect_square(m))
            throw InputError("PellConic: radicand must be a positive non-square");
        if (rhs != 1 && rhs != -1) throw InputError("PellConic: rhs must be +1 or -1");
    }
};

inline bool contains(const PellConic& c, const IntPoint& pt) {
    return pt.x * pt.x - c.m * pt.y * pt.y == c.rhs;
}

// Fundamental integral solution of x^2 - m y^2 = 1 for the closed-form
// families.  For m = n^2-4 (odd n) the fundamental unit is half-integral
// and its cube ((n^3-3n)/2, (n^2-1)/2) is the smallest integral solution.
inline IntPoint rd_fundamental(const RdFamily& f) {
    f.validate();
    switch (f.kind) {
        case RdFamily::Kind::NsqMinus1: return {f.n, 1};
        case RdFamily::Kind::NsqMinus4:
            return {(f.n * f.n * f.n - 3 * f.n) / 2, (f.n * f.n - 1) / 2};
        case RdFamily::Kind::NsqPlus2: return {f.n * f.n + 1, f.n};
    }
    throw InvalidFamily("unknown family");
}

// j-fold unit action on C(k,k): one step is (x,y) |-> (kx - y, x),
// inverse (x,y) |-> (y, ky - x).
inline IntPoint act(const Int& k, IntPoint pt, long long j) {
    Conic c(k, k);
    detail::require_on_conic(c, pt, "act");
    for (; j > 0; --j) pt = {k * pt.x - pt.y, pt.x};
    for (; j < 0; ++j) pt = {pt.y, k * pt.y - pt.x};
    return pt;
}

inline IntPoint c4_to_pell(const IntPoint& pt) {
    detail::require_on_conic(Conic(4, 4), pt, "c4_to_pell");
    if (pt.x % 2 != 0 || pt.y % 2 != 0)
        throw OddCoordinate("c4_to_pell: coordinates must be even");
    Int A = pt.x / 2, B = pt.y / 2;
    return {A - 2 * B, B};
}

inline IntPoint pell_to_c4(const IntPoint& pt) {
    if (pt.x * pt.x - 3 * pt.y * pt.y != 1)
        throw PointNotOnConic("pell_to_c4: point not on x^2 - 3y^2 = 1");
    return {2 * pt.x + 4 * pt.y, 2 * pt.y};
}

// ---------------------------------------------------------------------
// Chord group law over the rationals.

// a x^2 + b xy + c y^2 = rhs
struct QuadraticForm {
    Rat a, b, c, rhs;

    static QuadraticForm from(const Conic& conic) {
        return {Rat(1), Rat(-conic.p), Rat(1), Rat(conic.q)};
    }
    static QuadraticForm from(const PellConic& pc) {
        return {Rat(1), Rat(0), Rat(-pc.m), Rat(pc.rhs)};
    }

    Rat eval(const RatPoint& p) const {
        return a * p.x * p.x + b * p.x * p.y + c * p.y * p.y;
    }
    bool on(const RatPoint& p) const { return eval(p) == rhs; }
};

// Second intersection of the parallel to PQ through N.  For P = Q the
// chord degenerates to the tangent at P; a parallel tangent at N returns
// N itself.  Chords between rational points are never asymptotic here
// (the asymptote slopes are irrational), so the construction is total.
inline RatPoint group_add(const QuadraticForm& f, const RatPoint& n, const RatPoint& p,
                          const RatPoint& q) {
    if (!f.on(n) || !f.on(p) || !f.on(q))
        throw PointNotOnConic("group_add: all three points must lie on the conic");

    Rat dx, dy;
    if (p == q) {
        // Tangent direction: rotate the gradient (2a x + b y, b x + 2c y).
        dx = -(f.b * p.x + 2 * f.c * p.y);
        dy = 2 * f.a * p.x + f.b * p.y;
    } else {
        dx = q.x - p.x;
        dy = q.y - p.y;
    }

    // F(N + s d) = rhs + 2 s G(N, d) + s^2 G(d, d) with the polar form G.
    Rat g_nd = f.a * n.x * dx + f.b * (n.x * dy + n.y * dx) / 2 + f.c * n.y * dy;
    Rat g_dd = f.a * dx * dx + f.b * dx * dy + f.c * dy * dy;
    if (g_dd == 0) throw InternalError("group_add: asymptotic chord direction");
    Rat s = -2 * g_nd / g_dd;
    return {n.x + s * dx, n.y + s * dy};
}

inline RatPoint group_add(const PellConic& c, const RatPoint& n, const RatPoint& p,
                          const RatPoint& q) {
    return group_add(QuadraticForm::from(c), n, p, q);
}

inline RatPoint group_add(const Conic& c, const RatPoint& n, const RatPoint& p,
                          const RatPoint& q) {
    return group_add(QuadraticForm::from(c), n, p, q);
}

// ---------------------------------------------------------------------
// Vieta form of a Pell equation.
//
// With c = round(sqrt(m)), the shear X = x + c y identifies solutions of
//     x^2 + 2c xy + (c^2 - m) y^2 = 1
// with solutions of X^2 - m Y^2 = 1.  The sheared form is monic in x, so
// x-jumps are always integral and generate the solutions.

struct VietaForm {
    Int c;  // shear constant
    Int m;  // radicand of the underlying Pell equation

    // coefficients of x^2 + 2c xy + (c^2 - m) y^2
    Int coeff_xy() const { return 2 * c; }
    Int coeff_yy() const { return c * c - m; }

    Int eval(const IntPoint& pt) const {
        return pt.x * pt.x + coeff_xy() * pt.x * pt.y + coeff_yy() * pt.y * pt.y;
    }
    bool on(const IntPoint& pt) const { return eval(pt) == 1; }

    IntPoint to_pell(const IntPoint& pt) const { return {pt.x + c * pt.y, pt.y}; }
    IntPoint from_pell(const IntPoint& pt) const { return {pt.x - c * pt.y, pt.y}; }
};

inline VietaForm vieta_form(const Int& m) {
    if (m < 2 || is_perfect_square(m))
        throw InputError("vieta_form: m must be a positive non-square");
    Int s = isqrt(m);
    // nearest integer; sqrt(m) is irrational so there is no tie
    Int c = (m - s * s <= s) ? s : s + 1;
    return {c, m};
}

// ---------------------------------------------------------------------
// The table of integral points on C(4,4) indexed by unit powers.

struct Table1Row {
    long j;
    int sign;          // +1 rows carry eps^j, -1 rows carry -eps^j
    QuadElt element;   // (+-) eps^j in Z[sqrt(3)]
    IntPoint point;    // regenerated point on C(4,4)
    std::optional<IntPoint> printed;  // commonly printed value, when it differs
    bool printed_on_conic = true;

    bool erratum() const { return printed.has_value(); }
};

// Regenerates both halves of the classical C_4 table from the unit orbit:
// row (j, s) is the image of s * eps^j under the Pell -> C_4 bijection.
// Rows whose widely printed coordinates disagree with the regenerated
// (and conic-checked) values carry the printed pair as an erratum note.
inline std::vector<Table1Row> regen_table1() {
    // As printed: left half (+eps^j) and right half (-eps^j), j = -2..3.
    static const long js[] = {-2, -1, 0, 1, 2, 3};
    static const std::pair<long, long> printed_plus[] = {{-2, -8}, {0, -2}, {2, 0},
                                                         {8, 2},   {30, 8}, {82, 30}};
    static const std::pair<long, long> printed_minus[] = {{-30, 8}, {-8, 2}, {-2, 0},
                                                          {0, -2},  {2, -8}, {8, -30}};

    const Conic c4(4, 4);
    const QuadElt eps(2, 1, 3);
    std::vector<Table1Row> rows;

    for (int sign : {+1, -1}) {
        for (std::size_t i = 0; i < 6; ++i) {
            long j = js[i];
            QuadElt elt = unit_pow(eps, j);
            if (sign < 0) elt = negate(elt);
            IntPoint pt = pell_to_c4({elt.u, elt.v});
            if (!contains(c4, pt))
                throw InternalError("regen_table1: regenerated point off the conic");

            const auto& pr = sign > 0 ? printed_plus[i] : printed_minus[i];
            IntPoint printed{pr.first, pr.second};
            Table1Row row{j, sign, std::move(elt), pt, std::nullopt, true};
            if (printed != pt) {
                row.printed = printed;
                row.printed_on_conic = contains(c4, printed);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace vieta
