#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padh/tate.hpp"

using namespace padh;

namespace {
constexpr long kN = 30;
constexpr long kTol = kN - 5;

PadicElement pe(long p, long v) { return PadicElement::from_int(p, v, kN); }

PadicElement rand_unit(std::mt19937_64& rng, long p, long rel) {
    mpz_class u = 0;
    for (long i = 0; i < rel; ++i) u = u * p + static_cast<long>(rng() % p);
    if (u % p == 0) u += 1 + static_cast<long>(rng() % (p - 1));
    return PadicElement::from_unit_part(p, 0, u, rel);
}

// chord-tangent addition on Y^2 + XY = X^3 + a4 X + a6
struct Pt {
    bool inf = false;
    PadicElement x, y;
};

Pt ec_add(const Pt& a, const Pt& b, const PadicElement& a4) {
    if (a.inf) return b;
    if (b.inf) return a;
    long p = a.x.prime();
    auto c = [&](long v) { return PadicElement::from_int(p, v, PadicElement::kInfPrec); };
    PadicElement lam;
    if (!(a.x - b.x).is_zero()) {
        lam = (b.y - a.y) / (b.x - a.x);
    } else if ((a.y + b.y + b.x).is_zero()) {
        return Pt{true, a.x, a.y}; // opposite points
    } else {
        // tangent: lambda = (3x^2 + a4 - y) / (2y + x)
        lam = (c(3) * a.x * a.x + a4 - a.y) / (c(2) * a.y + a.x);
    }
    PadicElement x3 = lam * lam + lam - a.x - b.x;
    PadicElement y3 = -(lam * (x3 - a.x) + a.y) - x3;
    return Pt{false, x3, y3};
}
} // namespace

TEST_CASE("normalization and membership") {
    long p = 5;
    auto q = pe(p, 125);
    CHECK(normalize(pe(p, 5), q).u.valuation() == 1);
    CHECK(PadicElement::agree(normalize(pe(p, 5), q).u, pe(p, 5), kN));
    // 1/5 shifts by q: 125/5 = 25
    CHECK(PadicElement::agree(normalize(pe(p, 1) / pe(p, 5), q).u, pe(p, 25), kN - 2));
    CHECK(PadicElement::agree(normalize(pe(p, 250), q).u, pe(p, 2), kN));
    // idempotent
    auto n1 = normalize(pe(p, 7) * q.pow(3), q);
    auto n2 = normalize(n1.u, q);
    CHECK(PadicElement::agree(n1.u, n2.u, kTol));

    CHECK(formal_membership(normalize(pe(p, 6), q), q).kind == Membership::formal);
    CHECK(formal_membership(normalize(pe(p, 2), q), q).kind == Membership::identity_component);
    auto m = formal_membership(normalize(pe(p, 5), q), q);
    CHECK(m.kind == Membership::other);
    CHECK(m.component == 1);
}

TEST_CASE("theta basics and functional equation") {
    long p = 5;
    auto q = pe(p, 125);
    CHECK(theta(pe(p, 1), q, kN).is_zero_to(kTol));
    // theta = 1 - u mod q
    auto u = pe(p, 7);
    CHECK((theta(u, q, kN) - (pe(p, 1) - u)).is_zero_to(3));

    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        for (long pp : {3L, 5L, 7L}) {
            auto qq = rand_unit(rng, pp, kN) * pe(pp, pp).pow(1 + static_cast<long>(rng() % 3));
            auto uu = rand_unit(rng, pp, kN);
            if ((uu - PadicElement::from_int(pp, 1, kN)).is_zero_to(1)) continue;
            auto lhs = theta_ext(qq * uu, qq, kN);
            auto rhs = -(theta(uu, qq, kN) / uu);
            long tol = std::min({lhs.abs_precision(), rhs.abs_precision(), (long)kTol});
            CHECK((lhs - rhs).is_zero_to(tol));
        }
    }
}

TEST_CASE("parametrized points satisfy the curve equation") {
    std::mt19937_64 rng(9);
    for (long p : {3L, 5L, 7L}) {
        for (long e = 1; e <= 3; ++e) {
            auto q = rand_unit(rng, p, kN) * pe(p, p).pow(e);
            auto E = TateCurve::make(q, kN);
            bool a4_small = E.a4().is_zero() || E.a4().valuation() >= q.valuation();
            bool a6_small = E.a6().is_zero() || E.a6().valuation() >= q.valuation();
            CHECK(a4_small);
            CHECK(a6_small);
            for (int t = 0; t < 5; ++t) {
                auto u = rand_unit(rng, p, kN) * pe(p, p).pow(static_cast<long>(rng() % e));
                if ((u - PadicElement::from_int(p, 1, kN)).is_zero_to(3)) continue;
                auto [X, Y] = weierstrass_coords(normalize(u, q), E);
                auto resid = Y * Y + X * Y - X * X * X - E.a4() * X - E.a6();
                long tol = std::min(resid.abs_precision(), (long)kTol);
                CHECK(resid.is_zero_to(tol));
                CHECK(tol >= kN - 16); // equation residual certified near target precision
            }
        }
    }
}

TEST_CASE("j-invariant begins 1/q + 744") {
    long p = 5;
    std::mt19937_64 rng(21);
    auto q = rand_unit(rng, p, kN) * pe(p, p);
    auto E = TateCurve::make(q, kN);
    auto a4 = E.a4(), a6 = E.a6();
    auto c4 = pe(p, 1) - pe(p, 48) * a4;
    auto disc = a4 * a4 - a6 - pe(p, 64) * a4 * a4 * a4 - pe(p, 432) * a6 * a6 +
                pe(p, 72) * a4 * a6;
    auto j = c4 * c4 * c4 / disc;
    auto approx = q.inverse() + pe(p, 744) + pe(p, 196884) * q;
    CHECK((j - approx).is_zero_to(2 * q.valuation()));
}

TEST_CASE("parametrization is a homomorphism") {
    std::mt19937_64 rng(33);
    for (long p : {5L, 7L}) {
        auto q = rand_unit(rng, p, kN) * pe(p, p).pow(2);
        auto E = TateCurve::make(q, kN);
        for (int t = 0; t < 8; ++t) {
            auto u1 = rand_unit(rng, p, kN);
            auto u2 = rand_unit(rng, p, kN) * pe(p, p);
            auto one = PadicElement::from_int(p, 1, kN);
            if ((u1 - one).is_zero_to(2) || (u1 * u2 - one).is_zero_to(2)) continue;
            auto [x1, y1] = weierstrass_coords(normalize(u1, q), E);
            auto [x2, y2] = weierstrass_coords(normalize(u2, q), E);
            auto [x12, y12] = weierstrass_coords(normalize(u1 * u2, q), E);
            auto sum = ec_add(Pt{false, x1, y1}, Pt{false, x2, y2}, E.a4());
            REQUIRE(!sum.inf);
            long tol = std::min({(long)kTol, (x12 - sum.x).abs_precision(),
                                 (y12 - sum.y).abs_precision()});
            CHECK((x12 - sum.x).is_zero_to(tol));
            CHECK((y12 - sum.y).is_zero_to(tol));
        }
    }
}

TEST_CASE("inversion maps to the Weierstrass negative") {
    long p = 5;
    std::mt19937_64 rng(41);
    auto q = rand_unit(rng, p, kN) * pe(p, p).pow(2);
    auto E = TateCurve::make(q, kN);
    auto u = rand_unit(rng, p, kN) * pe(p, p);
    auto [x, y] = weierstrass_coords(normalize(u, q), E);
    auto [xi, yi] = weierstrass_coords(normalize(u.inverse(), q), E);
    CHECK((x - xi).is_zero_to(kN - 10));
    // -(X, Y) = (X, -Y - X)
    CHECK((yi + y + x).is_zero_to(kN - 10));
}

TEST_CASE("biextension cover operations") {
    long p = 5;
    auto q = pe(p, 125);
    std::mt19937_64 rng(55);
    auto c0 = rand_unit(rng, p, kN);
    auto u0 = rand_unit(rng, p, kN) * pe(p, 5);
    auto v0 = rand_unit(rng, p, kN) * pe(p, 25);
    BiextPoint x{c0, u0, v0};

    // scalar action
    auto sc = scalar_mul(pe(p, 3), x);
    CHECK(PadicElement::agree(sc.c, pe(p, 3) * c0, kTol));

    // partial laws on the trivialized cover multiply the fiber coordinates
    BiextPoint y{rand_unit(rng, p, kN), rand_unit(rng, p, kN), v0};
    auto m1 = mul_first(x, y);
    CHECK(PadicElement::agree(m1.c, x.c * y.c, kTol));
    CHECK(PadicElement::agree(m1.u, x.u * y.u, kTol));
    BiextPoint z{rand_unit(rng, p, kN), u0, rand_unit(rng, p, kN)};
    CHECK_NOTHROW(mul_second(x, z));
    CHECK_THROWS_AS(mul_first(x, z), IncompatibleFibers);

    // lattice actions commute: apply in both orders, compare normalized c
    BiextPoint g1{x.c / x.v, q * x.u, x.v};          // first-factor action
    BiextPoint g12{g1.c / g1.u, g1.u, q * g1.v};     // then second
    BiextPoint g2{x.c / x.u, x.u, q * x.v};          // second-factor action
    BiextPoint g21{g2.c / g2.v, q * g2.u, g2.v};     // then first
    {
        auto dcommute = g12.c - g21.c;
        long tol = std::min(dcommute.abs_precision(), (long)kTol);
        CHECK(dcommute.is_zero_to(tol));
        CHECK(tol >= kTol - 8);
    }

    // gamma_normalize undoes the actions and is idempotent
    auto nx = gamma_normalize(g12, q);
    auto nx0 = gamma_normalize(x, q);
    CHECK(PadicElement::agree(nx.c, nx0.c, kTol - 2));
    CHECK(PadicElement::agree(nx.u, nx0.u, kTol - 2));
    CHECK(PadicElement::agree(nx.v, nx0.v, kTol - 2));
    auto nn = gamma_normalize(nx, q);
    CHECK(PadicElement::agree(nn.c, nx.c, kTol - 2));

    // int_mul
    auto im = int_mul(2, 3, x);
    CHECK(PadicElement::agree(im.c, x.c.pow(6), kTol));
    CHECK(PadicElement::agree(im.u, x.u * x.u, kTol));
    CHECK(PadicElement::agree(im.v, x.v.pow(3), kTol));
}

TEST_CASE("biextension compatibility across the two partial laws") {
    long p = 7;
    std::mt19937_64 rng(77);
    auto q = pe(p, 49) * rand_unit(rng, p, kN);
    auto u1 = rand_unit(rng, p, kN), u2 = rand_unit(rng, p, kN) * pe(p, 7);
    auto v1 = rand_unit(rng, p, kN), v2 = rand_unit(rng, p, kN) * pe(p, 7);
    auto c11 = rand_unit(rng, p, kN), c12 = rand_unit(rng, p, kN);
    auto c21 = rand_unit(rng, p, kN), c22 = rand_unit(rng, p, kN);
    BiextPoint x11{c11, u1, v1}, x12{c12, u1, v2}, x21{c21, u2, v1}, x22{c22, u2, v2};
    // (x11 *1 x21) *2 (x12 *1 x22) vs (x11 *2 x12) *1 (x21 *2 x22)
    auto a = mul_second(mul_first(x11, x21), mul_first(x12, x22));
    auto b = mul_first(mul_second(x11, x12), mul_second(x21, x22));
    CHECK(PadicElement::agree(a.c, b.c, kTol));
    CHECK(PadicElement::agree(a.u, b.u, kTol));
    CHECK(PadicElement::agree(a.v, b.v, kTol));
}
