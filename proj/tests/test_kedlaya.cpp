#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padh/frobenius.hpp"
#include "padh/kedlaya.hpp"

using namespace padh;

namespace {
constexpr long kN = 30;
constexpr long kTol = kN - 5;
} // namespace

TEST_CASE("naive point counts") {
    CHECK(count_points_naive({5, 1, 1}) == -3); // y^2 = x^3 + x + 1 has 9 points
    CHECK(count_points_naive({5, 1, 0}) == 2);  // y^2 = x^3 + x has 4 points
    CHECK(count_points_naive({5, 0, 1}) == 0);  // supersingular
    for (long p : {5L, 7L, 11L, 13L}) {
        for (long b = 1; b < 4; ++b) {
            GoodCurve c{p, 1, b};
            long ap = count_points_naive(c);
            CHECK(ap * ap <= 4 * p); // Hasse bound
        }
    }
}

TEST_CASE("frobenius matrix charpoly matches point counts") {
    GoodCurve c1{5, 1, 1};
    auto r1 = frobenius_matrix(c1, kN);
    CHECK(r1.a_p == -3);
    // x^2 + 3x + 5
    CHECK(PadicElement::agree(r1.charpoly.coeff[0], PadicElement::from_int(5, 5, kN), kTol));
    CHECK(PadicElement::agree(r1.charpoly.coeff[1], PadicElement::from_int(5, 3, kN), kTol));

    GoodCurve c2{5, 1, 0};
    auto r2 = frobenius_matrix(c2, kN);
    CHECK(r2.a_p == 2);
    CHECK(PadicElement::agree(r2.charpoly.coeff[0], PadicElement::from_int(5, 5, kN), kTol));
    CHECK(PadicElement::agree(r2.charpoly.coeff[1], PadicElement::from_int(5, -2, kN), kTol));

    GoodCurve c3{7, 2, 3};
    auto r3 = frobenius_matrix(c3, kN);
    CHECK(r3.a_p == count_points_naive(c3));
    // det = p
    auto det = r3.matrix.at(0, 0) * r3.matrix.at(1, 1) -
               r3.matrix.at(0, 1) * r3.matrix.at(1, 0);
    CHECK(PadicElement::agree(det, PadicElement::from_int(7, 7, kN), kTol));
}

TEST_CASE("bad and unsupported inputs") {
    CHECK_THROWS_AS(frobenius_matrix({5, 0, 0}, kN), BadReduction);
    CHECK_THROWS_AS(frobenius_matrix({3, 1, 1}, kN), EvenPrimeUnsupported);
}

TEST_CASE("kedlaya module feeds the slope machinery") {
    GoodCurve c{5, 1, 1};
    auto r = frobenius_matrix(c, kN);
    FrobeniusModule m;
    m.dim = 2;
    m.label = "B";
    m.phi = r.matrix;
    m.hodge_sub = PadicMatrix::zero_matrix(2, 1, 5, PadicElement::kInfPrec);
    m.hodge_sub.at(0, 0) = PadicElement::from_int(5, 1, PadicElement::kInfPrec);

    auto w = unit_root_subspace(m, kTol);
    REQUIRE(w.cols() == 1);
    // eigen-direction of the unit root of x^2+3x+5 (Hensel oracle)
    PadicPoly f{{PadicElement::from_int(5, 5, PadicElement::kInfPrec),
                 PadicElement::from_int(5, 3, PadicElement::kInfPrec),
                 PadicElement::from_int(5, 1, PadicElement::kInfPrec)}};
    auto lam = hensel_root(f, 2, 5, kN);
    // (phi - lam) w = 0
    auto shifted = m.phi - PadicMatrix::identity(2, 5, PadicElement::kInfPrec) * lam;
    auto img = shifted * w;
    CHECK(img.at(0, 0).is_zero_to(kTol));
    CHECK(img.at(1, 0).is_zero_to(kTol));

    auto sp = unit_root_splitting(m, kTol);
    // s o phi o r = 0 and phi-invariance of im(r)
    auto comp = sp.s * (m.phi * sp.r);
    CHECK(comp.at(0, 0).is_zero_to(kTol));
    CHECK(PadicMatrix::same_column_span(PadicMatrix::hcat(sp.r, m.phi * sp.r), sp.r, kTol));

    // supersingular curve: downstream extraction must refuse
    auto rs = frobenius_matrix({5, 0, 1}, kN);
    CHECK(rs.a_p == 0);
    FrobeniusModule ms = m;
    ms.phi = rs.matrix;
    CHECK_THROWS_AS(unit_root_subspace(ms, kTol), NotOrdinary);
}

TEST_CASE("synthetic diagram with a genuine abelian-part Frobenius") {
    GoodCurve c{5, 1, 1};
    auto r = frobenius_matrix(c, kN);
    auto d = synthetic_diagram(99, 5, 1, kN, &r.matrix);
    CHECK_NOTHROW(check_diagram(d, kTol));
    auto rep = verify_unit_root_lift(d, kTol);
    CHECK(rep.pass);
}

TEST_CASE("higher precision agrees on shared digits") {
    GoodCurve c{5, 1, 1};
    auto lo = frobenius_matrix(c, kN);
    auto hi = frobenius_matrix(c, kN + 10);
    for (long i = 0; i < 2; ++i)
        for (long j = 0; j < 2; ++j)
            CHECK((lo.matrix.at(i, j) - hi.matrix.at(i, j)).is_zero_to(kN - 1));
}
