#pragma once

#include <string>
#include <vector>

#include "vieta/conic.hpp"
#include "vieta/errors.hpp"
#include "vieta/factor.hpp"
#include "vieta/numeric.hpp"

/*
 * Theorem-backed solvability of x^2 - p*x*y + y^2 = q.
 *
 *   p < 0          y |-> -y reduces to -p (witnesses reflected back).
 *   p = 0          sum of two squares.
 *   p = 1          (2x - y)^2 + 3y^2 = 4q.
 *   p = 2          (x - y)^2 = q.
 *   p > 2:
 *     0 < q <= p+1   solvable iff q is a square (witness (sqrt q, 0)).
 *     q = p+2        infinite family from (1,-1).
 *     q = 2-p        infinite family from (1,1).
 *     3-p <= q < 0   no solutions.
 *     anything else  outside the proved ranges; callers fall back to
 *                    box_search.
 */

namespace vieta {

enum class VerdictTag {
    UnsolvableByTheorem,
    SolvableSquare,
    SolvableFamily,
    SolvableRepresentation,
    UnsupportedRange,
};

inline const char* to_string(VerdictTag t) {
    switch (t) {
        case VerdictTag::UnsolvableByTheorem: return "UnsolvableByTheorem";
        case VerdictTag::SolvableSquare: return "SolvableSquare";
        case VerdictTag::SolvableFamily: return "SolvableFamily";
        case VerdictTag::SolvableRepresentation: return "SolvableRepresentation";
        case VerdictTag::UnsupportedRange: return "UnsupportedRange";
    }
    return "?";
}

struct ClassificationVerdict {
    VerdictTag tag;
    std::vector<IntPoint> witnesses;
    std::string theorem_id;
    std::string notes;
};

inline ClassificationVerdict classify(const Int& p, const Int& q) {
    if (q == 0)
        return {VerdictTag::UnsupportedRange, {}, "", "q = 0 is excluded (degenerate conic)"};

    if (p < 0) {
        ClassificationVerdict v = classify(-p, q);
        for (auto& w : v.witnesses) w.y = -w.y;
        v.notes = v.notes.empty() ? "reduced via y |-> -y" : v.notes + "; reduced via y |-> -y";
        return v;
    }

    if (p == 0) {
        if (q < 0)
            return {VerdictTag::UnsolvableByTheorem, {}, "p0-two-squares", "x^2 + y^2 >= 0"};
        if (q > kFactorizationCap)
            return {VerdictTag::UnsupportedRange, {}, "", "q beyond factorization cap"};
        auto rep = two_square_rep(q);
        if (!rep)
            return {VerdictTag::UnsolvableByTheorem, {}, "p0-two-squares",
                    "a prime = 3 (mod 4) divides q to an odd power"};
        return {VerdictTag::SolvableRepresentation, {{rep->first, rep->second}},
                "p0-two-squares", "q = A^2 + B^2"};
    }

    if (p == 1) {
        if (q < 0)
            return {VerdictTag::UnsolvableByTheorem, {}, "p1-rep", "(2x-y)^2 + 3y^2 >= 0"};
        if (q > kFactorizationCap)
            return {VerdictTag::UnsupportedRange, {}, "", "q beyond factorization cap"};
        auto rep = rep_c2_plus_3d2(4 * q);
        if (!rep)
            return {VerdictTag::UnsolvableByTheorem, {}, "p1-rep",
                    "a prime = 2 (mod 3) divides q to an odd power"};
        // c, d share parity, so x = (c + d)/2 is integral.
        Int x = (rep->first + rep->second) / 2;
        return {VerdictTag::SolvableRepresentation, {{x, rep->second}}, "p1-rep",
                "4q = c^2 + 3d^2 with (x,y) = ((c+d)/2, d)"};
    }

    if (p == 2) {
        auto [sq, root] = exact_sqrt(q);
        if (!sq)
            return {VerdictTag::UnsolvableByTheorem, {}, "p2-square",
                    "(x-y)^2 = q has no solution for non-square q"};
        return {VerdictTag::SolvableSquare, {{root, 0}}, "p2-square", "q = (x-y)^2"};
    }

    // p > 2
    if (q > 0 && q <= p + 1) {
        auto [sq, root] = exact_sqrt(q);
        if (!sq)
            return {VerdictTag::UnsolvableByTheorem, {}, "TM1",
                    "0 < q <= p+1 and q not a square"};
        return {VerdictTag::SolvableSquare, {{root, 0}}, "TM1", "q is a square"};
    }
    if (q == p + 2) {
        return {VerdictTag::SolvableFamily, {{1, -1}, {1, p + 1}}, "family-q=p+2",
                "infinite jump family seeded at (1,-1)"};
    }
    if (q == 2 - p) {
        return {VerdictTag::SolvableFamily, {{1, 1}, {1, p - 1}}, "family-q=2-p",
                "infinite jump family seeded at (1,1)"};
    }
    if (q < 0 && q >= 3 - p) {
        return {VerdictTag::UnsolvableByTheorem, {}, "Thpq",
                "3-p <= q < 0 forces min positive coordinate below 1"};
    }
    return {VerdictTag::UnsupportedRange, {}, "",
            "outside the proved ranges; use box_search"};
}

}  // namespace vieta
