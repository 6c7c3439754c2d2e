#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padh/linalg.hpp"
#include "padh/logmap.hpp"
#include "padh/padic.hpp"

using namespace padh;

namespace {
PadicElement rand_unit(std::mt19937_64& rng, long p, long rel) {
    mpz_class u = 0;
    for (long i = 0; i < rel; ++i) u = u * p + static_cast<long>(rng() % p);
    if (u % p == 0) u += 1 + static_cast<long>(rng() % (p - 1));
    return PadicElement::from_unit_part(p, 0, u, rel);
}
} // namespace

TEST_CASE("basic arithmetic and precision bounds") {
    auto half = PadicElement::from_rational(5, mpq_class(1, 2), 4);
    CHECK(half.valuation() == 0);
    CHECK(half.unit() == 313); // 2 * 313 = 626 = 1 mod 625
    CHECK(half.abs_precision() == 4);

    auto a = PadicElement::from_int(7, 42, 10);
    auto z = PadicElement::exact_zero(7);
    auto s = a + z;
    CHECK(s.valuation() == a.valuation());
    CHECK(s.unit() == a.unit());
    CHECK(s.abs_precision() == a.abs_precision());

    auto u = PadicElement::from_int(5, 2, 8);
    auto v = PadicElement::from_int(5, 3, 8);
    auto q = (u.shift(2)) / (v.shift(2));
    CHECK(q.valuation() == 0);

    CHECK_THROWS_AS(u / PadicElement::zero(5, 8), DivisionByIndistinguishableZero);
}

TEST_CASE("addition cancellation tracks precision") {
    auto a = PadicElement::from_int(5, 1, 6);   // 1 + O(5^6)
    auto b = -PadicElement::from_int(5, 1, 10); // -1 + O(5^10)
    auto s = a + b;
    CHECK(s.is_zero());
    CHECK(s.abs_precision() == 6);
    // 1 + 5^3 minus 1: valuation 3 survives
    auto c = PadicElement::from_int(5, 126, 6) - PadicElement::from_int(5, 1, 6);
    CHECK(c.valuation() == 3);
}

TEST_CASE("token and digit round trips") {
    auto x = PadicElement::from_rational(7, mpq_class(22, 5), 9);
    auto y = PadicElement::parse_token(x.token());
    CHECK(y.prime() == x.prime());
    CHECK(y.valuation() == x.valuation());
    CHECK(y.unit() == x.unit());
    CHECK(y.abs_precision() == x.abs_precision());

    auto z = PadicElement::from_digits(x.prime(), x.valuation(), x.unit_digits(),
                                       x.abs_precision());
    CHECK(z.unit() == x.unit());
    CHECK(z.abs_precision() == x.abs_precision());

    auto o = PadicElement::parse_token(PadicElement::zero(5, 12).token());
    CHECK(o.is_zero());
    CHECK(o.abs_precision() == 12);
}

TEST_CASE("sqrt and pow") {
    auto nine = PadicElement::from_int(5, 9, 12);
    auto r = nine.sqrt();
    CHECK(PadicElement::agree(r * r, nine, 12));
    auto x = PadicElement::from_rational(7, mpq_class(3, 4), 10);
    CHECK(PadicElement::agree(x.pow(3), x * x * x, 10));
    CHECK(PadicElement::agree(x.pow(-2) * x.pow(2), PadicElement::from_int(7, 1, 10), 10));
}

TEST_CASE("teichmuller lifts") {
    auto one = PadicElement::from_int(5, 1, 10);
    CHECK(PadicElement::agree(teichmuller(one), one, 10));

    auto two = PadicElement::from_int(5, 2, 10);
    auto w = teichmuller(two);
    // the 4th root of unity congruent to 2 mod 5 is 7 mod 25
    CHECK((w - PadicElement::from_int(5, 7, 10)).is_zero_to(2));
    CHECK(PadicElement::agree(w.pow(4), one, 10));

    std::mt19937_64 rng(11);
    for (int t = 0; t < 25; ++t) {
        for (long p : {3L, 5L, 7L}) {
            auto u = rand_unit(rng, p, 12);
            auto om = teichmuller(u);
            CHECK(PadicElement::agree(om.pow(p - 1), PadicElement::from_int(p, 1, 12), 12));
            CHECK((om - u).is_zero_to(1));
        }
    }
}

TEST_CASE("log branches") {
    long N = 14;
    auto br0 = LogBranch::iwasawa(5, N);
    CHECK(br0(PadicElement::from_int(5, 1, N)).is_zero_to(N));
    CHECK(br0(PadicElement::from_int(5, 5, N)).is_zero_to(N));

    auto br1 = LogBranch::at_p(PadicElement::from_int(5, 1, N));
    CHECK(PadicElement::agree(br1(PadicElement::from_int(5, 25, N)),
                              PadicElement::from_int(5, 2, N), N));

    // independent series oracle for log(6) = log(1+5) over Q_5
    mpz_class M = p_power(5, N + 3), acc = 0;
    for (long n = 1; n <= N + 6; ++n) {
        long e = mpz_ord(mpz_class(n), 5);
        mpz_class term = p_power(5, n - e), inv, nc(n / mpz_get_si(p_power(5, e).get_mpz_t()));
        mpz_invert(inv.get_mpz_t(), nc.get_mpz_t(), M.get_mpz_t());
        term = term * inv;
        if (n % 2 == 0) term = -term;
        acc = (acc + term) % M;
    }
    acc %= p_power(5, N);
    long v6 = mpz_ord(acc, 5);
    auto oracle = PadicElement::from_unit_part(5, v6, acc / p_power(5, v6), N - v6);
    CHECK(PadicElement::agree(br0(PadicElement::from_int(5, 6, N)), oracle, N));
}

TEST_CASE("log is additive on units") {
    std::mt19937_64 rng(7);
    long N = 12;
    for (long p : {3L, 5L, 7L}) {
        auto br = LogBranch::iwasawa(p, N);
        for (int t = 0; t < 1000; ++t) {
            auto x = rand_unit(rng, p, N);
            auto y = rand_unit(rng, p, N);
            auto d = br(x * y) - br(x) - br(y);
            CHECK(d.is_zero_to(N - 1));
        }
    }
}

TEST_CASE("log of powers and mixed valuations") {
    long N = 12;
    auto br = LogBranch::at_p(PadicElement::from_int(7, 3, N));
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        auto x = rand_unit(rng, 7, N).shift(static_cast<long>(rng() % 5) - 2);
        auto lhs = br(x.pow(4));
        auto rhs = br(x) * PadicElement::from_int(7, 4, PadicElement::kInfPrec);
        CHECK(PadicElement::agree(lhs, rhs,
                                  std::min(lhs.abs_precision(), rhs.abs_precision())));
    }
}

TEST_CASE("teichmuller decomposition remultiplies") {
    std::mt19937_64 rng(17);
    long N = 12;
    for (int t = 0; t < 50; ++t) {
        auto x = rand_unit(rng, 5, N).shift(static_cast<long>(rng() % 7) - 3);
        auto w = teichmuller(PadicElement::from_unit_part(5, 0, x.unit(), N));
        auto u = PadicElement::from_unit_part(5, 0, x.unit(), N) / w;
        auto re = w * u;
        CHECK(PadicElement::agree(re, PadicElement::from_unit_part(5, 0, x.unit(), N), N));
        CHECK((u - PadicElement::from_int(5, 1, N)).is_zero_to(1));
    }
}

TEST_CASE("hensel lifting") {
    long p = 5, N = 12;
    auto c = [&](long v) { return PadicElement::from_int(p, v, PadicElement::kInfPrec); };
    PadicPoly f{{c(5), c(3), c(1)}}; // x^2 + 3x + 5
    auto r = hensel_root(f, 2, p, N);
    CHECK((r - c(7)).is_zero_to(2));
    CHECK(f.eval(r).is_zero_to(N));

    PadicPoly lin{{-c(9), c(1)}};
    CHECK(PadicElement::agree(hensel_root(lin, 4, p, N), c(9), N));
    PadicPoly sq{{-c(1), c(0), c(1)}};
    CHECK(PadicElement::agree(hensel_root(sq, 1, p, N), c(1), N));

    PadicPoly dbl2{{c(1), -c(2), c(1)}}; // (x-1)^2: seed 1 is a double root
    CHECK_THROWS_AS(hensel_root(dbl2, 1, p, N), NonSimpleRoot);
}

TEST_CASE("charpoly basics") {
    long p = 5, N = 12;
    auto c = [&](long v) { return PadicElement::from_int(p, v, PadicElement::kInfPrec); };
    PadicMatrix m(2, 2, PadicElement::exact_zero(p));
    m.at(0, 0) = c(1);
    m.at(1, 1) = c(5);
    auto cp = charpoly(m);
    REQUIRE(cp.degree() == 2);
    CHECK(PadicElement::agree(cp.coeff[0], c(5), N));
    CHECK(PadicElement::agree(cp.coeff[1], -c(6), N));
    CHECK(PadicElement::agree(cp.coeff[2], c(1), N));
}

TEST_CASE("charpoly conjugation invariance") {
    long p = 7, N = 10;
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        long n = 3;
        PadicMatrix m(n, n, PadicElement::exact_zero(p));
        PadicMatrix g(n, n, PadicElement::exact_zero(p));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j) {
                m.at(i, j) = PadicElement::from_int(p, static_cast<long>(rng() % 100) - 50, N);
                g.at(i, j) = PadicElement::from_int(p, static_cast<long>(rng() % 100) - 50, N);
            }
        // force g invertible: diagonal dominance by a unit
        for (long i = 0; i < n; ++i) g.at(i, i) = g.at(i, i) + PadicElement::from_int(p, 1 + static_cast<long>(rng() % (p - 1)), N);
        bool invertible = true;
        PadicMatrix gi(n, n, PadicElement::exact_zero(p));
        try {
            gi = g.inverse();
        } catch (const MathError&) {
            invertible = false;
        }
        if (!invertible) continue;
        auto cp1 = charpoly(m);
        auto cp2 = charpoly(gi * m * g);
        for (long k = 0; k <= cp1.degree(); ++k) {
            long tol = std::min(cp1.coeff[k].abs_precision(), cp2.coeff[k].abs_precision());
            CHECK((cp1.coeff[k] - cp2.coeff[k]).is_zero_to(std::min(tol, N - 3)));
        }
    }
}

TEST_CASE("matrix inverse, rank, kernel") {
    long p = 5, N = 12;
    auto c = [&](long v) { return PadicElement::from_int(p, v, N); };
    PadicMatrix m(2, 2, PadicElement::exact_zero(p));
    m.at(0, 0) = c(2); m.at(0, 1) = c(1);
    m.at(1, 0) = c(5); m.at(1, 1) = c(3);
    auto mi = m.inverse();
    CHECK((m * mi).equal_mod(PadicMatrix::identity(2, p, N), N - 1));

    PadicMatrix s(2, 2, PadicElement::exact_zero(p));
    s.at(0, 0) = c(1); s.at(0, 1) = c(2);
    s.at(1, 0) = c(2); s.at(1, 1) = c(4);
    CHECK(s.rank(N - 2) == 1);
    auto k = s.kernel(N - 2);
    CHECK(k.cols() == 1);
    auto img = s * k;
    CHECK(img.at(0, 0).is_zero_to(N - 2));
    CHECK(img.at(1, 0).is_zero_to(N - 2));
}

TEST_CASE("precision soundness under recomputation at higher precision") {
    long N = 12;
    for (long p : {3L, 5L, 7L}) {
        auto br = LogBranch::iwasawa(p, N);
        auto brH = LogBranch::iwasawa(p, N + 10);
        auto x = PadicElement::from_rational(p, mpq_class(p + 1, p + 2), N);
        auto xH = PadicElement::from_rational(p, mpq_class(p + 1, p + 2), N + 10);
        CHECK(PadicElement::agree(br(x), brH(xH).truncated(br(x).abs_precision()),
                                  br(x).abs_precision()));
        CHECK(PadicElement::agree(teichmuller(x), teichmuller(xH).truncated(N), N));
    }
}
