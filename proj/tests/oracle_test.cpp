#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "helpers.hpp"
#include "vieta/factor.hpp"
#include "vieta/oracle.hpp"

using namespace vieta;

TEST_CASE("box_search finds the Fibonacci chain") {
    auto rep = box_search(Conic(3, -1), 13);
    auto has = [&](long x, long y) {
        return std::find(rep.hits.begin(), rep.hits.end(), IntPoint{x, y}) != rep.hits.end();
    };
    CHECK(has(1, 1));
    CHECK(has(1, 2));
    CHECK(has(2, 5));
    CHECK(has(5, 13));
    CHECK(has(2, 1));
    CHECK(has(-1, -2));
    CHECK(std::is_sorted(rep.hits.begin(), rep.hits.end()));
}

TEST_CASE("box_search agrees with the double loop") {
    auto g = testutil::rng(41);
    for (int i = 0; i < 40; ++i) {
        long p = testutil::rand_in(g, -6, 8);
        long q = testutil::rand_in(g, -10, 10);
        if (q == 0) continue;
        Conic c(p, q);
        auto fast = box_search(c, 25).hits;
        auto slow = testutil::brute_box(c, 25);
        REQUIRE(fast == slow);
    }
}

TEST_CASE("box_search on proven-empty and structured conics") {
    CHECK(box_search(Conic(5, 5), 1000).hits.empty());

    auto rep = box_search(Conic(2, 9), 5);
    for (const auto& pt : rep.hits) CHECK(abs(pt.x - pt.y) == 3);
    CHECK(rep.hits.size() == testutil::brute_box(Conic(2, 9), 5).size());
}

TEST_CASE("box hits of the boundary families are exactly the jump chains") {
    for (long p : {4L, 5L, 9L}) {
        for (long q : {p + 2, 2 - p}) {
            Conic c(p, q);
            IntPoint seed = (q == p + 2) ? IntPoint{1, -1} : IntPoint{1, 1};
            std::set<IntPoint> expect;
            for (const auto& pt : chain(c, seed, 25, 25)) {
                if (abs(pt.x) <= 500 && abs(pt.y) <= 500) {
                    expect.insert(pt);
                    expect.insert({-pt.x, -pt.y});
                }
            }
            auto hits = box_search(c, 500).hits;
            REQUIRE(std::set<IntPoint>(hits.begin(), hits.end()) == expect);
        }
    }
}

TEST_CASE("box_search is deterministic across worker counts") {
    Conic c(3, -1);
    auto a = box_search(c, 400, 1);
    auto b = box_search(c, 400, 8);
    CHECK(a == b);
    CHECK(a.exhaustiveness_note == b.exhaustiveness_note);
}

TEST_CASE("imo_scan") {
    auto one = imo_scan(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == ImoHit{1, 1, 1});

    auto hits = imo_scan(30);
    CHECK(std::find(hits.begin(), hits.end(), ImoHit{8, 30, 4}) != hits.end());
    for (const auto& h : hits) CHECK(is_perfect_square(h.k));

    auto big = imo_scan(250);
    CHECK(std::find(big.begin(), big.end(), ImoHit{27, 240, 9}) != big.end());
    CHECK(imo_scan(250, 1) == imo_scan(250, 8));
}

TEST_CASE("norm_scan witnesses") {
    auto m3 = norm_scan(3, 7);
    CHECK(m3.at(2).minus == IntPoint{1, 1});
    CHECK(m3.at(6).plus == IntPoint{3, 1});
    CHECK(m3.at(3).minus == IntPoint{0, 1});
    CHECK(m3.at(1).solvable());
    CHECK_FALSE(m3.at(5).solvable());

    auto m24 = norm_scan(24, 11);
    CHECK(m24.at(8).minus == IntPoint{4, 1});
    for (long nu = 2; nu < 8; ++nu) {
        if (is_perfect_square(Int(nu))) continue;
        CHECK_FALSE(m24.at(nu).solvable());
    }

    auto m27 = norm_scan(27, 2);
    CHECK(m27.at(2).minus == IntPoint{5, 1});

    // boundary case where the completeness bound is attained exactly:
    // 20^2 - 45*3^2 = -5 and y = 3 sits on the bound
    auto m45 = norm_scan(45, 5);
    CHECK(m45.at(5).minus == IntPoint{20, 3});

    CHECK_THROWS_AS(norm_scan(16, 5), NonSquareRequired);
    CHECK_THROWS_AS(norm_scan(7, 5), UnsupportedRange);
}

TEST_CASE("norm_scan bound is validated by widening") {
    for (long m : {3L, 8L, 15L, 24L, 27L}) {
        auto base = norm_scan(m, 20);
        auto wide = norm_scan(m, 20, 64);  // scans far past the claimed bound
        REQUIRE(base.entries.size() == wide.entries.size());
        for (std::size_t i = 0; i < base.entries.size(); ++i) {
            CHECK(base.entries[i].solvable() == wide.entries[i].solvable());
            CHECK(base.entries[i] == wide.entries[i]);
        }
    }
}

TEST_CASE("two-square representations") {
    CHECK(two_square_rep(5) == std::make_pair(Int(1), Int(2)));
    CHECK_FALSE(two_square_rep(3).has_value());
    CHECK(two_square_rep(25) == std::make_pair(Int(3), Int(4)));
    CHECK(two_square_rep(4) == std::make_pair(Int(2), Int(0)));

    // criterion vs direct search, exhaustively at small scale
    for (long q = 1; q <= 2000; ++q) {
        bool direct = false;
        for (long a = 0; a * a <= q && !direct; ++a)
            direct = is_perfect_square(Int(q - a * a));
        auto rep = two_square_rep(q);
        REQUIRE(rep.has_value() == direct);
        if (rep) REQUIRE(rep->first * rep->first + rep->second * rep->second == q);
    }

    CHECK_THROWS_AS(two_square_rep(kFactorizationCap + 1), FactorizationTooLarge);
}

TEST_CASE("c^2 + 3d^2 representations") {
    auto r = rep_c2_plus_3d2(12);
    REQUIRE(r.has_value());
    CHECK(r->first * r->first + 3 * r->second * r->second == 12);
    CHECK((r->first - r->second) % 2 == 0);
    CHECK_FALSE(rep_c2_plus_3d2(8).has_value());

    for (long q = 1; q <= 1500; ++q) {
        bool direct = false;
        for (long d = 0; 3 * d * d <= 4 * q && !direct; ++d)
            direct = is_perfect_square(Int(4 * q - 3 * d * d));
        auto rep = rep_c2_plus_3d2(4 * q);
        REQUIRE(rep.has_value() == direct);
        if (rep) {
            REQUIRE(rep->first * rep->first + 3 * rep->second * rep->second == 4 * q);
            REQUIRE((rep->first - rep->second) % 2 == 0);
        }
    }

    CHECK_THROWS_AS(rep_c2_plus_3d2(10), InputError);
}

TEST_CASE("final proposition scan") {
    auto one = verify_final_prop(1);
    REQUIRE(one.hits.size() == 1);
    CHECK(one.hits[0] == FinalPropHit{1, 1, 1});
    CHECK(one.counterexamples.empty());

    auto rep = verify_final_prop(100);
    CHECK(rep.counterexamples.empty());
    CHECK(std::find(rep.hits.begin(), rep.hits.end(), FinalPropHit{4, 1, 2}) !=
          rep.hits.end());

    // (2,1) does not divide: 6/5
    for (const auto& h : rep.hits) CHECK(!(h.x == 2 && h.y == 1));
}

TEST_CASE("trial factorization") {
    auto f = trial_factorize(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::make_pair(Int(2), 3u));
    CHECK(f[1] == std::make_pair(Int(3), 2u));
    CHECK(f[2] == std::make_pair(Int(5), 1u));
    CHECK(trial_factorize(1).empty());
    CHECK(trial_factorize(97).size() == 1);
}
