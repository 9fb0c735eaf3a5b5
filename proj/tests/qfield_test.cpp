#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "vieta/davenport.hpp"
#include "vieta/oracle.hpp"
#include "vieta/qfield.hpp"

using namespace vieta;

TEST_CASE("QuadElt construction and canonical form") {
    QuadElt a(2, 1, 3);
    CHECK(a.d == 1);
    QuadElt half(7, 1, 45, 2);
    CHECK(half.d == 2);
    QuadElt reduces(2, 4, 5, 2);  // (2 + 4 sqrt 5)/2 = 1 + 2 sqrt 5
    CHECK(reduces == QuadElt(1, 2, 5));

    CHECK_THROWS_AS(QuadElt(1, 1, 16), InputError);     // square radicand
    CHECK_THROWS_AS(QuadElt(1, 2, 5, 2), InputError);   // parity
    CHECK_THROWS_AS(QuadElt(1, 1, 3, 2), InputError);   // m != 1 (mod 4)
    CHECK_THROWS_AS(QuadElt(1, 1, -3), InputError);
}

TEST_CASE("norms of the named elements") {
    CHECK(norm(QuadElt(2, 1, 3)) == 1);
    CHECK(norm(QuadElt(9, 1, 45, 2)) == 9);  // (n+2 + sqrt(n^2-4))/2 at n = 7
    CHECK(norm(rd_delta(5)) == -2);
    CHECK(norm(QuadElt(0, 1, 7)) == -7);
}

TEST_CASE("norm is multiplicative") {
    auto g = testutil::rng(21);
    const long ms[] = {3, 8, 15, 24, 27, 45};
    for (int i = 0; i < 10000; ++i) {
        Int m = ms[testutil::rand_in(g, 0, 5)];
        auto rand_elt = [&] {
            Int u = testutil::rand_in(g, -50, 50);
            Int v = testutil::rand_in(g, -50, 50);
            if (m % 4 == 1 && testutil::rand_in(g, 0, 1)) {
                if (u % 2 == 0) u += 1;
                if (v % 2 == 0) v += 1;
                return QuadElt(u, v, m, 2);
            }
            return QuadElt(u, v, m);
        };
        QuadElt a = rand_elt(), b = rand_elt();
        REQUIRE(norm(mul(a, b)) == norm(a) * norm(b));
    }
}

TEST_CASE("conjugation and signs") {
    QuadElt a(9, 5, 3);
    CHECK(mul(a, conj(a)) == QuadElt::integer(norm(a), 3));
    CHECK(sign_of(a) > 0);
    CHECK(sign_of(QuadElt(-9, 5, 3)) < 0);   // 5 sqrt 3 < 9
    CHECK(sign_of(QuadElt(-5, 3, 3)) > 0);   // 3 sqrt 3 > 5
    CHECK(sign_of(QuadElt(0, 0, 3)) == 0);
    CHECK(sign_of(sub(QuadElt(2, 1, 3), QuadElt(0, 2, 3))) > 0);  // 2+s3 > 2 s3
    CHECK(compare(QuadElt(1, 1, 3), QuadElt(3, 0, 3)) < 0);       // 1+s3 < 3
}

TEST_CASE("mismatched radicands are rejected") {
    CHECK_THROWS_AS(mul(QuadElt(1, 1, 3), QuadElt(1, 1, 8)), RadicandMismatch);
}

TEST_CASE("parametrized units") {
    auto e1 = rd_unit({RdFamily::Kind::NsqMinus1, 2});
    CHECK(e1 == QuadElt(2, 1, 3));
    CHECK(norm(e1) == 1);

    auto e4 = rd_unit({RdFamily::Kind::NsqMinus4, 7});
    CHECK(e4 == QuadElt(7, 1, 45, 2));
    CHECK(norm(e4) == 1);

    auto e2 = rd_unit({RdFamily::Kind::NsqPlus2, 5});
    CHECK(e2 == QuadElt(26, 5, 27));
    CHECK(norm(e2) == 1);

    CHECK_THROWS_AS(rd_unit({RdFamily::Kind::NsqMinus4, 8}), InvalidFamily);
    CHECK_THROWS_AS(rd_unit({RdFamily::Kind::NsqMinus1, 1}), InvalidFamily);
}

TEST_CASE("delta squares to twice the unit") {
    CHECK(rd_delta(1) == QuadElt(1, 1, 3));
    CHECK(norm(rd_delta(1)) == -2);
    for (long n = 1; n <= 100; ++n) {
        QuadElt d = rd_delta(n);
        CHECK(norm(d) == -2);
        QuadElt eps = rd_unit({RdFamily::Kind::NsqPlus2, n});
        CHECK(mul(d, d) == scale(2, eps));
    }
}

TEST_CASE("radicand recognition") {
    REQUIRE(rd_family_of(3).has_value());
    CHECK(rd_family_of(3)->kind == RdFamily::Kind::NsqMinus1);
    CHECK(rd_family_of(27)->kind == RdFamily::Kind::NsqPlus2);
    CHECK(rd_family_of(45)->kind == RdFamily::Kind::NsqMinus4);
    CHECK_FALSE(rd_family_of(7).has_value());
    CHECK_FALSE(rd_family_of(16).has_value());

    CHECK(rd_integral_unit(3) == QuadElt(2, 1, 3));
    CHECK(rd_integral_unit(45) == QuadElt(161, 24, 45));  // eps^3
    CHECK(norm(*rd_integral_unit(45)) == 1);
}

TEST_CASE("unit powers keep the norm") {
    QuadElt eps(2, 1, 3), xi(9, 5, 3);
    Int nu = abs(norm(xi));
    for (long long j = -20; j <= 20; ++j)
        CHECK(abs(norm(mul(xi, unit_pow(eps, j)))) == nu);
}

TEST_CASE("reduce_by_unit: worked examples") {
    QuadElt eps(2, 1, 3);

    auto r = reduce_by_unit(QuadElt(9, 5, 3), eps);
    CHECK(r.j == -1);
    CHECK(r.reduced == QuadElt(3, 1, 3));
    CHECK(r.nu == 6);
    CHECK(reduction_bounds_hold(r));

    // already reduced: stays put even though nu*eps is exactly a square
    auto r2 = reduce_by_unit(QuadElt(3, 1, 3), eps);
    CHECK(r2.j == 0);
    CHECK(r2.reduced == QuadElt(3, 1, 3));

    // the unit itself reduces to 1
    auto r3 = reduce_by_unit(eps, eps);
    CHECK(r3.j == -1);
    CHECK(r3.reduced == QuadElt::integer(1, 3));

    CHECK_THROWS_AS(reduce_by_unit(QuadElt(0, 0, 3), eps), ZeroElement);
    CHECK_THROWS_AS(reduce_by_unit(QuadElt(9, 5, 3), rd_delta(1)), NotAUnit);
    CHECK_THROWS_AS(reduce_by_unit(QuadElt(9, 5, 3), conj(eps)), NotAUnit);  // < 1
}

TEST_CASE("reduce_by_unit: bounds hold across radicands") {
    auto g = testutil::rng(22);
    struct Fam {
        long m;
        RdFamily fam;
    };
    const Fam fams[] = {
        {3, {RdFamily::Kind::NsqMinus1, 2}},  {8, {RdFamily::Kind::NsqMinus1, 3}},
        {15, {RdFamily::Kind::NsqMinus1, 4}}, {24, {RdFamily::Kind::NsqMinus1, 5}},
        {27, {RdFamily::Kind::NsqPlus2, 5}},  {45, {RdFamily::Kind::NsqMinus4, 7}},
    };
    for (const auto& f : fams) {
        QuadElt eps = rd_unit(f.fam);
        for (int i = 0; i < 170; ++i) {
            Int u = testutil::rand_in(g, -1000000, 1000000);
            Int v = testutil::rand_in(g, -1000000, 1000000);
            if (u == 0 && v == 0) continue;
            int d = 1;
            if (f.m % 4 == 1 && testutil::rand_in(g, 0, 1)) {
                if (u % 2 == 0) u += 1;
                if (v % 2 == 0) v += 1;
                d = 2;
            }
            QuadElt xi(u, v, f.m, d);
            auto r = reduce_by_unit(xi, eps);
            REQUIRE(r.reduced == mul(xi, unit_pow(eps, r.j)));
            REQUIRE(abs(norm(r.reduced)) == abs(norm(xi)));
            REQUIRE(reduction_bounds_hold(r));
        }
    }
}

TEST_CASE("small_norm_classify") {
    auto v = small_norm_classify({RdFamily::Kind::NsqMinus1, 5}, 7);
    CHECK(v.shape == NormShape::ForcedSquare);
    CHECK_FALSE(norm_scan(24, 7).at(7).solvable());  // 7 is not a square: unsolvable

    auto e = small_norm_classify({RdFamily::Kind::NsqMinus4, 7}, 5);
    CHECK(e.shape == NormShape::ForcedExceptional);
    CHECK(*e.exceptional == 5);
    // witness: eps - 1 has norm 2 - n
    QuadElt eps = rd_unit({RdFamily::Kind::NsqMinus4, 7});
    CHECK(norm(sub(eps, QuadElt::integer(1, 45))) == 2 - 7);

    auto p2 = small_norm_classify({RdFamily::Kind::NsqPlus2, 5}, 9);
    CHECK(p2.shape == NormShape::ForcedExceptional);  // 9 = 2n-1
    CHECK(shape_allows({RdFamily::Kind::NsqPlus2, 5}, 9));  // also a square

    CHECK(small_norm_classify({RdFamily::Kind::NsqMinus1, 5}, 8).shape ==
          NormShape::NoConstraint);
    CHECK_THROWS_AS(small_norm_classify({RdFamily::Kind::NsqMinus4, 5}, 3),
                    ParameterOutOfTheoremRange);
    CHECK_THROWS_AS(small_norm_classify({RdFamily::Kind::NsqPlus2, 4}, 3),
                    ParameterOutOfTheoremRange);
    CHECK_THROWS_AS(small_norm_classify({RdFamily::Kind::NsqMinus1, 3}, 0), InputError);
}

TEST_CASE("half_window_reduce pins |b| <= 1") {
    auto g = testutil::rng(23);
    for (long n : {5L, 7L, 10L}) {
        Int m = n * n + 2;
        auto scan = norm_scan(m, 2 * n);
        for (const auto& entry : scan.entries) {
            for (const auto& w : {entry.plus, entry.minus}) {
                if (!w) continue;
                QuadElt xi(w->x, w->y, m);
                if (xi.is_zero()) continue;
                // displace along the orbit, then reduce back
                long e = testutil::rand_in(g, -3, 3);
                xi = mul(xi, unit_pow(rd_unit({RdFamily::Kind::NsqPlus2, n}), e));
                auto th = half_window_reduce(xi, n);
                REQUIRE(abs(th.reduced.v) <= 1);
                REQUIRE(abs(norm(th.reduced)) == th.nu_effective);
                Int nu = abs(norm(xi));
                REQUIRE((th.nu_effective == nu || th.nu_effective == 2 * nu));
                REQUIRE(th.used_delta == (th.nu_effective == 2 * nu));
            }
        }
    }
    CHECK_THROWS_AS(half_window_reduce(QuadElt(1, 1, 27), 4), ParameterOutOfTheoremRange);
    CHECK_THROWS_AS(half_window_reduce(QuadElt(1, 1, 27), 6), RadicandMismatch);
}

TEST_CASE("points as ring elements") {
    CHECK(point_to_element(4, {8, 2}) == QuadElt(4, 2, 3));
    CHECK(norm(point_to_element(4, {8, 2})) == 4);
    CHECK(point_to_element(9, {3, 0}) == QuadElt::integer(3, 77));
    CHECK(point_to_element(4, {2, 0}) == QuadElt::integer(2, 3));

    // 4 + 2 sqrt 3 = 2 eps
    CHECK(point_to_element(4, {8, 2}) == scale(2, QuadElt(2, 1, 3)));

    for (const auto& pt :
         {IntPoint{2, 0}, IntPoint{2, 8}, IntPoint{8, 2}, IntPoint{30, 8}, IntPoint{-2, -8}}) {
        QuadElt a = point_to_element(4, pt);
        CHECK(norm(a) == 4);
        CHECK(element_to_point(4, a) == pt);
    }
    for (const auto& pt : {IntPoint{3, 0}, IntPoint{27, 3}, IntPoint{3, 27}}) {
        QuadElt a = point_to_element(9, pt);
        CHECK(norm(a) == 9);
        CHECK(element_to_point(9, a) == pt);
    }
    {
        // odd negative k
        IntPoint pt{1, -2};
        QuadElt a = point_to_element(-5, pt);
        CHECK(norm(a) == -5);
        CHECK(element_to_point(-5, a) == pt);
    }

    CHECK_THROWS_AS(point_to_element(2, {1, 0}), DegenerateK);
    CHECK_THROWS_AS(point_to_element(4, {1, 1}), PointNotOnConic);
}

TEST_CASE("cassels_combine") {
    CHECK(cassels_combine(Rat(1), Rat(1), Rat(1), Rat(1)));
    CHECK(cassels_combine(Rat(2), Rat(3), Rat(3), Rat(6)));
    CHECK(cassels_combine(Rat(1), Rat(2), Rat(3), Rat(5)));
    CHECK_THROWS_AS(cassels_combine(Rat(3), Rat(1), Rat(2), Rat(6)), PreconditionViolated);
    CHECK_THROWS_AS(cassels_combine(Rat(1), Rat(1), Rat(0), Rat(1)), PreconditionViolated);
}

TEST_CASE("davenport minima") {
    auto d2 = davenport_min_norms(2);
    CHECK(d2.plus_nu == 6);
    CHECK(d2.plus_witness == IntPoint{3, 1});
    CHECK(d2.minus_nu == 2);
    CHECK(d2.minus_witness == IntPoint{1, 1});

    auto d5 = davenport_min_norms(5);
    CHECK(d5.plus_nu == 12);
    CHECK(d5.plus_witness == IntPoint{6, 1});
    CHECK(d5.minus_nu == 8);
    CHECK(d5.minus_witness == IntPoint{4, 1});

    // 2t+2 can itself be a square (t = 7 gives 16); the bound still holds
    auto d7 = davenport_min_norms(7);
    CHECK(d7.plus_nu == 16);
    CHECK(d7.minus_nu == 12);

    for (long t = 2; t <= 40; ++t) {
        // witness identities, symbolically
        CHECK(Int(t + 1) * (t + 1) - (Int(t) * t - 1) == 2 * t + 2);
        CHECK(Int(t - 1) * (t - 1) - (Int(t) * t - 1) == -(2 * t - 2));
    }
}
