#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vieta/errors.hpp"
#include "vieta/numeric.hpp"

/*
 * Integral points on the conic
 *
 *     C(p,q): x^2 - p*x*y + y^2 = q,   q != 0.
 *
 * Fixing one coordinate turns the equation into a monic quadratic in the
 * other, so a known root has an integral companion root (the root sum is
 * p*y resp. p*x).  Jumping to the companion root gives the two step
 * operators
 *
 *     sharp(x,y) = (x, p*x - y)        (jump y)
 *     flat(x,y)  = (p*y - x, y)        (jump x)
 *
 * Both are involutions and preserve the conic.  For q > 0, p > 2 the jump
 * towards the smaller branch strictly decreases x+y on nonnegative points,
 * which drives the descent to an axis point (A,0) or (0,A): that certifies
 * q = A^2.  Applied to q = p = k with k = (a^2+b^2)/(ab+1) this is the
 * classical proof that the quotient is a perfect square.
 */

namespace vieta {

struct IntPoint {
    Int x, y;

    friend bool operator==(const IntPoint&, const IntPoint&) = default;
    friend bool operator<(const IntPoint& a, const IntPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

inline std::string to_string(const IntPoint& p) {
    return "(" + p.x.get_str() + ", " + p.y.get_str() + ")";
}

struct Conic {
    Int p, q;

    Conic(Int p_, Int q_) : p(std::move(p_)), q(std::move(q_)) {
        if (q == 0) throw InputError("conic requires q != 0");
    }
};

inline Int evaluate(const Conic& c, const IntPoint& pt) {
    return pt.x * pt.x - c.p * pt.x * pt.y + pt.y * pt.y;
}

inline bool contains(const Conic& c, const IntPoint& pt) {
    return evaluate(c, pt) == c.q;
}

namespace detail {
inline void require_on_conic(const Conic& c, const IntPoint& pt, const char* who) {
    if (!contains(c, pt))
        throw PointNotOnConic(std::string(who) + ": " + to_string(pt) +
                              " does not satisfy x^2 - " + c.p.get_str() +
                              "xy + y^2 = " + c.q.get_str());
}
}  // namespace detail

inline IntPoint sharp(const Conic& c, const IntPoint& pt) {
    detail::require_on_conic(c, pt, "sharp");
    return {pt.x, c.p * pt.x - pt.y};
}

inline IntPoint flat(const Conic& c, const IntPoint& pt) {
    detail::require_on_conic(c, pt, "flat");
    return {c.p * pt.y - pt.x, pt.y};
}

enum class StepTag { Sharp, Flat, NegateBoth, Swap };

inline const char* to_string(StepTag t) {
    switch (t) {
        case StepTag::Sharp: return "sharp";
        case StepTag::Flat: return "flat";
        case StepTag::NegateBoth: return "negate-both";
        case StepTag::Swap: return "swap";
    }
    return "?";
}

struct DescentStep {
    StepTag tag;
    IntPoint point;

    friend bool operator==(const DescentStep&, const DescentStep&) = default;
};

// Replayable trace of a descent run.  Every listed point is on the conic;
// sharp/flat steps between nonnegative points strictly shrink x+y.
struct DescentCertificate {
    Conic conic;
    IntPoint start;
    std::vector<DescentStep> steps;
    IntPoint terminal;
};

// Descent stops at an axis point or at equal coordinates; equal
// coordinates only occur for the q-values that admit them (k = 1 on C_k).
inline bool is_descent_terminal(const IntPoint& pt) {
    return pt.x == 0 || pt.y == 0 || pt.x == pt.y;
}

// The sum argument guarantees termination; the budget turns a logic bug
// into an explicit error instead of a hang.
inline constexpr std::size_t kDescentStepBudget = 1'000'000;

inline DescentCertificate descend(const Conic& c, const IntPoint& start) {
    detail::require_on_conic(c, start, "descend");

    DescentCertificate cert{c, start, {}, start};
    IntPoint cur = start;

    auto push = [&](StepTag tag, IntPoint next) {
        cert.steps.push_back({tag, next});
        cur = std::move(next);
    };

    std::size_t budget = kDescentStepBudget;
    while (true) {
        if (cur.x < 0 && cur.y < 0) {
            // The conic is invariant under (x,y) |-> (-x,-y).
            push(StepTag::NegateBoth, {-cur.x, -cur.y});
            continue;
        }
        if (is_descent_terminal(cur)) break;

        if (c.p <= 2 || c.q <= 0)
            throw UnsupportedRange("descend: needs p > 2 and q > 0 away from terminal points");

        if (budget-- == 0)
            throw NonterminatingGuard("descend: step budget exceeded");

        if (cur.y < 0) {
            // Mixed sign, x > 0: the y-jump lands in the first quadrant.
            push(StepTag::Sharp, {cur.x, c.p * cur.x - cur.y});
        } else if (cur.x < 0) {
            push(StepTag::Flat, {c.p * cur.y - cur.x, cur.y});
        } else if (cur.y > cur.x) {
            push(StepTag::Sharp, {cur.x, c.p * cur.x - cur.y});
        } else {
            push(StepTag::Flat, {c.p * cur.y - cur.x, cur.y});
        }
    }

    cert.terminal = cur;
    return cert;
}

// Replays a certificate step by step.  Checks: every point on the conic,
// steps consistent with their tags, x+y strictly decreasing across
// sharp/flat steps joining nonnegative points, terminal matching.
inline bool verify_certificate(const DescentCertificate& cert) {
    if (!contains(cert.conic, cert.start)) return false;
    IntPoint cur = cert.start;
    const Int& p = cert.conic.p;
    for (const auto& step : cert.steps) {
        IntPoint expect;
        switch (step.tag) {
            case StepTag::Sharp: expect = {cur.x, p * cur.x - cur.y}; break;
            case StepTag::Flat: expect = {p * cur.y - cur.x, cur.y}; break;
            case StepTag::NegateBoth: expect = {-cur.x, -cur.y}; break;
            case StepTag::Swap: expect = {cur.y, cur.x}; break;
        }
        if (step.point != expect) return false;
        if (!contains(cert.conic, step.point)) return false;
        if ((step.tag == StepTag::Sharp || step.tag == StepTag::Flat) &&
            cur.x >= 0 && cur.y >= 0 && step.point.x >= 0 && step.point.y >= 0) {
            if (step.point.x + step.point.y >= cur.x + cur.y) return false;
        }
        cur = step.point;
    }
    return cur == cert.terminal;
}

// Alternating jump chain through `start`: forward begins with sharp when
// x >= y (flat otherwise), backward begins with the complementary
// operator; both directions then alternate.  Output is ordered backmost
// first.  This reproduces the classical sequences on C_{m^2} from (m,0):
//   ..., (-m,0), (m,0), (m,m^3), (m^5-m,m^3), ...
inline std::vector<IntPoint> chain(const Conic& c, const IntPoint& start,
                                   std::size_t n_back, std::size_t n_fwd) {
    detail::require_on_conic(c, start, "chain");

    const bool fwd_sharp_first = start.x >= start.y;
    auto step = [&](const IntPoint& pt, bool use_sharp) -> IntPoint {
        if (use_sharp) return {pt.x, c.p * pt.x - pt.y};
        return {c.p * pt.y - pt.x, pt.y};
    };

    std::vector<IntPoint> back;
    {
        IntPoint cur = start;
        bool use_sharp = !fwd_sharp_first;
        for (std::size_t i = 0; i < n_back; ++i) {
            cur = step(cur, use_sharp);
            use_sharp = !use_sharp;
            back.push_back(cur);
        }
    }

    std::vector<IntPoint> out;
    out.reserve(n_back + n_fwd + 1);
    for (auto it = back.rbegin(); it != back.rend(); ++it) out.push_back(*it);
    out.push_back(start);
    {
        IntPoint cur = start;
        bool use_sharp = fwd_sharp_first;
        for (std::size_t i = 0; i < n_fwd; ++i) {
            cur = step(cur, use_sharp);
            use_sharp = !use_sharp;
            out.push_back(cur);
        }
    }
    return out;
}

// a_1 = 0, a_2 = m, a_{n+2} = m^2 a_{n+1} - a_n.  Consecutive pairs lie on
// C(m^2, m^2) and satisfy a_n a_{n+2} = a_{n+1}^2 - m^2.
inline std::vector<Int> recurrence_seq(const Int& m, std::size_t count) {
    if (m < 1) throw InputError("recurrence_seq: m must be positive");
    if (count < 2) throw InputError("recurrence_seq: count must be at least 2");
    std::vector<Int> a;
    a.reserve(count);
    a.push_back(0);
    a.push_back(m);
    const Int m2 = m * m;
    while (a.size() < count) {
        a.push_back(m2 * a[a.size() - 1] - a[a.size() - 2]);
    }
    return a;
}

// (a^2 + b^2) / (ab + 1) when the division is exact.
inline std::optional<Int> imo_quotient(const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw InputError("imo_quotient: a, b must be positive");
    Int den = a * b + 1;
    Int num = a * a + b * b;
    Int r, k;
    mpz_fdiv_qr(k.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) return std::nullopt;
    return k;
}

struct ImoCertificate {
    Int k;     // the quotient, always root^2
    Int root;  // |axis coordinate| of the terminal (1 for the (1,1) case)
    DescentCertificate cert;
};

// Runs the descent on C(k,k) from (a,b) and reads off the square root of
// k at the terminal point.
inline ImoCertificate imo_certify(const Int& a, const Int& b) {
    auto k = imo_quotient(a, b);
    if (!k) throw NotDivisible("imo_certify: ab+1 does not divide a^2+b^2");

    Conic c(*k, *k);
    DescentCertificate cert = descend(c, {a, b});

    Int root;
    if (cert.terminal.x == 0)
        root = abs(cert.terminal.y);
    else if (cert.terminal.y == 0)
        root = abs(cert.terminal.x);
    else
        root = abs(cert.terminal.x);  // equal coordinates; only k = 1 here
    if (root * root != *k)
        throw InternalError("imo_certify: terminal does not certify a square");
    return {*k, root, std::move(cert)};
}

// Consecutive odd-indexed Fibonacci pairs (F_{2n-1}, F_{2n+1}); each one
// satisfies x^2 - 3xy + y^2 = -1, i.e. (x^2+y^2)/(3xy-1) = 1.
inline std::vector<IntPoint> fibonacci_solutions(std::size_t count) {
    if (count < 1) throw InputError("fibonacci_solutions: count must be positive");
    std::vector<IntPoint> out;
    out.reserve(count);
    Int f1 = 1, f2 = 1;  // F_1, F_2
    for (std::size_t n = 0; n < count; ++n) {
        Int f3 = f1 + f2;  // F_{2n+3} after the loop body rotates
        out.push_back({f1, f3});
        // advance two indices: (F_{2n+1}, F_{2n+2})
        f1 = f3;
        f2 = f2 + f3;
    }
    return out;
}

}  // namespace vieta
