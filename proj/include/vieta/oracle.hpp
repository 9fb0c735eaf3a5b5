#pragma once

#include <algorithm>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "vieta/conic.hpp"
#include "vieta/errors.hpp"
#include "vieta/factor.hpp"
#include "vieta/numeric.hpp"
#include "vieta/qfield.hpp"

/*
 * Brute-force searchers.  Everything here is independent of the jump
 * machinery so it can confirm it: scans enumerate, the theorems predict,
 * tests compare.  Reports are deterministic for fixed parameters no matter
 * how many workers run the scan.
 */

namespace vieta {

struct ScanReport {
    std::map<std::string, std::string> params;
    std::vector<IntPoint> hits;  // sorted lexicographically
    std::string exhaustiveness_note;

    friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(index) for index in [0, count) across `threads` workers in
// contiguous blocks.  Callers merge per-index results in index order, so
// output never depends on the worker count.  The first exception thrown
// in a worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t lo = w * chunk;
        if (lo >= count) break;
        std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([lo, hi, w, &fn, &errors] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

// All integral points with |x|, |y| <= bound.  Per x-column the conic is a
// monic quadratic in y, so one discriminant square test per column does it:
// y = (p x +- s)/2 with s^2 = (p^2-4) x^2 + 4q.
inline ScanReport box_search(const Conic& c, const Int& bound, unsigned threads = 0) {
    if (bound < 1) throw InputError("box_search: bound must be >= 1");
    if (bound > 100000000) throw InputError("box_search: bound beyond desk scale (10^8)");

    const Int disc_a = c.p * c.p - 4;
    std::size_t columns = static_cast<std::size_t>(2 * bound.get_ui() + 1);
    std::vector<std::vector<IntPoint>> per_column(columns);

    detail::parallel_for(columns, threads, [&](std::size_t idx) {
        Int x = -bound + static_cast<long>(idx);
        Int disc = disc_a * x * x + 4 * c.q;
        if (disc < 0) return;
        auto [sq, s] = exact_sqrt(disc);
        if (!sq) return;
        auto& out = per_column[idx];
        Int y1 = (c.p * x + s) / 2;  // p x and s share parity when disc is a square
        if (abs(y1) <= bound) out.push_back({x, y1});
        if (s != 0) {
            Int y2 = (c.p * x - s) / 2;
            if (abs(y2) <= bound) out.push_back({x, y2});
        }
    });

    ScanReport rep;
    rep.params = {{"p", c.p.get_str()}, {"q", c.q.get_str()}, {"bound", bound.get_str()}};
    for (auto& col : per_column)
        for (auto& pt : col) rep.hits.push_back(std::move(pt));
    std::sort(rep.hits.begin(), rep.hits.end());
    rep.exhaustiveness_note =
        "complete for |x|,|y| <= " + bound.get_str() +
        ": per-column discriminant square test enumerates every y for each x";
    return rep;
}

struct ImoHit {
    Int a, b, k;

    friend bool operator==(const ImoHit&, const ImoHit&) = default;
};

// All 1 <= a <= b <= bound with (ab+1) | (a^2+b^2), quotient attached.
inline std::vector<ImoHit> imo_scan(const Int& bound, unsigned threads = 0) {
    if (bound < 1) throw InputError("imo_scan: bound must be >= 1");
    if (bound > 1000000) throw InputError("imo_scan: bound beyond desk scale (10^6)");
    std::size_t n = bound.get_ui();
    std::vector<std::vector<ImoHit>> per_a(n);

    detail::parallel_for(n, threads, [&](std::size_t idx) {
        Int a = static_cast<long>(idx) + 1;
        for (Int b = a; b <= bound; ++b) {
            Int den = a * b + 1;
            Int num = a * a + b * b;
            if (num % den == 0) per_a[idx].push_back({a, b, num / den});
        }
    });

    std::vector<ImoHit> hits;
    for (auto& v : per_a)
        for (auto& h : v) hits.push_back(std::move(h));
    return hits;
}

// ---------------------------------------------------------------------
// Norm scans over Richaud-Degert radicands.

struct NormScanEntry {
    Int nu;
    std::optional<IntPoint> plus;   // x^2 - m y^2 = +nu
    std::optional<IntPoint> minus;  // x^2 - m y^2 = -nu

    bool solvable() const { return plus.has_value() || minus.has_value(); }

    friend bool operator==(const NormScanEntry&, const NormScanEntry&) = default;
};

struct NormScanReport {
    Int m;
    Int nu_max;
    std::vector<NormScanEntry> entries;  // entries[i] covers nu = i+1
    std::string exhaustiveness_note;

    const NormScanEntry& at(const Int& nu) const {
        return entries.at(nu.get_ui() - 1);
    }

    friend bool operator==(const NormScanReport&, const NormScanReport&) = default;
};

// Decides |x^2 - m y^2| = nu for every nu <= nu_max, with witnesses.
// Completeness: multiplying a solution by a power of the integral unit U
// keeps x, y integral and lands |y| <= sqrt(nu * B^2 / (4m)) with
// B^2 = tr(U) + 2, so scanning y through that bound (inclusive: the bound
// is attained when nu*U is a ring square) sees every solvable nu.
// An explicit y_slack widens the window for bound-validation tests.
inline NormScanReport norm_scan(const Int& m, const Int& nu_max, unsigned y_slack = 1) {
    if (is_perfect_square(m) || m < 2)
        throw NonSquareRequired("norm_scan: radicand must be a positive non-square");
    if (nu_max < 1) throw InputError("norm_scan: nu_max must be >= 1");
    if (nu_max > 1000000) throw InputError("norm_scan: nu_max beyond desk scale (10^6)");

    auto unit = rd_integral_unit(m);
    if (!unit)
        throw UnsupportedRange(
            "norm_scan: radicand outside the closed-form families n^2-1, n^2-4, n^2+2");

    // B^2 = tr(U) + 2 = 2 u + 2 for the integral unit U = u + v sqrt(m).
    Int Bsq = 2 * unit->u + 2;

    NormScanReport rep;
    rep.m = m;
    rep.nu_max = nu_max;
    rep.entries.resize(nu_max.get_ui());
    for (std::size_t i = 0; i < rep.entries.size(); ++i)
        rep.entries[i].nu = static_cast<long>(i) + 1;

    // ceil-safe inclusive bound at nu = nu_max, plus slack
    Int y_cap = isqrt((nu_max * Bsq + 4 * m - 1) / (4 * m)) + y_slack;

    // Ascending y keeps the recorded witness minimal in y, so the report
    // does not depend on nu_max or the slack.
    for (Int y = 0; y <= y_cap; ++y) {
        Int base = m * y * y;
        for (auto& entry : rep.entries) {
            const Int& nu = entry.nu;
            if (!entry.plus) {
                auto [ok, x] = exact_sqrt(base + nu);
                if (ok) entry.plus = IntPoint{x, y};
            }
            if (!entry.minus && base >= nu) {
                auto [ok, x] = exact_sqrt(base - nu);
                if (ok) entry.minus = IntPoint{x, y};
            }
        }
    }

    rep.exhaustiveness_note =
        "complete: every solution class of |x^2 - " + m.get_str() +
        " y^2| = nu has a representative with y^2 <= nu * " + Bsq.get_str() +
        " / (4 * " + m.get_str() + ") (B^2 = tr(unit)+2, unit = " + to_string(*unit) +
        "), bound inclusive";
    return rep;
}

// ---------------------------------------------------------------------
// (x^2 + 2y^2) / (2xy + 1) scan: every integral quotient should be a
// square or twice a square.

struct FinalPropHit {
    Int x, y, k;

    friend bool operator==(const FinalPropHit&, const FinalPropHit&) = default;
};

struct FinalPropReport {
    Int bound;
    std::vector<FinalPropHit> hits;
    std::vector<FinalPropHit> counterexamples;  // expected empty
};

inline FinalPropReport verify_final_prop(const Int& bound, unsigned threads = 0) {
    if (bound < 1) throw InputError("verify_final_prop: bound must be >= 1");
    if (bound > 100000) throw InputError("verify_final_prop: bound beyond desk scale (10^5)");
    std::size_t n = bound.get_ui();
    std::vector<std::vector<FinalPropHit>> per_x(n);

    detail::parallel_for(n, threads, [&](std::size_t idx) {
        Int x = static_cast<long>(idx) + 1;
        for (Int y = 1; y <= bound; ++y) {
            Int den = 2 * x * y + 1;
            Int num = x * x + 2 * y * y;
            if (num % den == 0) per_x[idx].push_back({x, y, num / den});
        }
    });

    FinalPropReport rep;
    rep.bound = bound;
    for (auto& v : per_x)
        for (auto& h : v) {
            if (!is_perfect_square(h.k) && !(h.k % 2 == 0 && is_perfect_square(h.k / 2)))
                rep.counterexamples.push_back(h);
            rep.hits.push_back(std::move(h));
        }
    return rep;
}

}  // namespace vieta
