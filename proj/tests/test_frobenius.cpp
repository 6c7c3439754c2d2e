#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "padh/frobenius.hpp"
#include "padh/linalg.hpp"

using namespace padh;

namespace {
constexpr long kP = 5;
constexpr long kN = 30;
constexpr long kTol = kN - 5;

PadicElement c5(long v) { return PadicElement::from_int(kP, v, PadicElement::kInfPrec); }

FrobeniusModule diag_module() {
    FrobeniusModule m;
    m.dim = 2;
    m.label = "B";
    m.phi = PadicMatrix::zero_matrix(2, 2, kP, PadicElement::kInfPrec);
    m.phi.at(0, 0) = c5(1);
    m.phi.at(1, 1) = c5(5);
    m.hodge_sub = PadicMatrix::zero_matrix(2, 1, kP, PadicElement::kInfPrec);
    m.hodge_sub.at(1, 0) = c5(1);
    return m;
}
} // namespace

TEST_CASE("unit root subspace of diagonal slopes") {
    auto m = diag_module();
    auto w = unit_root_subspace(m, kTol);
    REQUIRE(w.cols() == 1);
    // span(e1): second coordinate vanishes, first is a unit
    CHECK(w.at(1, 0).is_zero_to(kTol));
    CHECK(w.at(0, 0).valuation() == 0);

    auto sp = unit_root_splitting(m, kTol);
    CHECK(sp.r.at(1, 0).is_zero_to(kTol));
    // s kills e1: s * e1 = 0
    CHECK(sp.s.at(0, 0).is_zero_to(kTol));
    CHECK(sp.s.at(0, 1).valuation() == 0);
}

TEST_CASE("torus module has zero unit-root subspace") {
    FrobeniusModule t;
    t.dim = 2;
    t.label = "T";
    t.phi = PadicMatrix::identity(2, kP, PadicElement::kInfPrec) * c5(kP);
    t.hodge_sub = PadicMatrix::identity(2, kP, PadicElement::kInfPrec);
    auto w = unit_root_subspace(t, kTol);
    CHECK(w.cols() == 0);
    auto sp = unit_root_splitting(t, kTol);
    CHECK(sp.r.cols() == 0);
}

TEST_CASE("unit root direction matches the Hensel-lifted eigenvalue") {
    // companion matrix of x^2 + 3x + 5: ordinary, unit root = 7 mod 25
    FrobeniusModule m;
    m.dim = 2;
    m.label = "B";
    m.phi = PadicMatrix::zero_matrix(2, 2, kP, PadicElement::kInfPrec);
    m.phi.at(0, 1) = -c5(5);
    m.phi.at(1, 0) = c5(1);
    m.phi.at(1, 1) = -c5(3);
    m.hodge_sub = PadicMatrix::zero_matrix(2, 1, kP, PadicElement::kInfPrec);
    m.hodge_sub.at(0, 0) = c5(1); // any complement of the unit direction works here
    PadicPoly f{{c5(5), c5(3), c5(1)}};
    auto lam = hensel_root(f, 2, kP, kN); // root of x^2+3x+5 congruent to 2 mod 5
    auto w = unit_root_subspace(m, kTol);
    REQUIRE(w.cols() == 1);
    // w must be an eigenvector: phi*w = lam*w up to the other eigenvalue branch
    auto img = m.phi * w;
    auto lhs = img.at(0, 0) * w.at(1, 0);
    auto rhs = img.at(1, 0) * w.at(0, 0);
    CHECK((lhs - rhs).is_zero_to(kTol));
    // eigenvalue on w is the negated Hensel unit root of the charpoly of -phi...
    // check directly: (phi - lam)(w) is parallel to nothing: phi*w = mu*w with mu unit
    PadicElement mu;
    if (!w.at(0, 0).is_zero_to(kTol))
        mu = img.at(0, 0) / w.at(0, 0);
    else
        mu = img.at(1, 0) / w.at(1, 0);
    // mu is a root of x^2+3x+5 with unit valuation: must agree with -3 - lam or lam...
    CHECK(f.eval(mu).is_zero_to(kTol));
    CHECK(mu.valuation() == 0);
    CHECK(PadicElement::agree(mu, lam, std::min(mu.abs_precision(), lam.abs_precision()) >= kTol
                                           ? kTol
                                           : std::min(mu.abs_precision(), lam.abs_precision())));
}

TEST_CASE("supersingular-style module is rejected") {
    // trace divisible by p, det = p: both slopes 1/2
    FrobeniusModule m;
    m.dim = 2;
    m.label = "B";
    m.phi = PadicMatrix::zero_matrix(2, 2, kP, PadicElement::kInfPrec);
    m.phi.at(0, 1) = -c5(5);
    m.phi.at(1, 0) = c5(1);
    m.hodge_sub = PadicMatrix::zero_matrix(2, 1, kP, PadicElement::kInfPrec);
    m.hodge_sub.at(0, 0) = c5(1);
    CHECK_THROWS_AS(unit_root_subspace(m, kTol), NotOrdinary);
}

TEST_CASE("unit root subspace is phi-stable and functorial") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto d = synthetic_diagram(seed, kP, 1, kN);
        auto w_a = unit_root_subspace(d.A, kTol);
        auto img = PadicMatrix::hcat(w_a, d.A.phi * w_a);
        CHECK(img.rank(kTol) == w_a.rank(kTol)); // phi(W) inside W
        // functoriality along pi*: pi*(W_A) inside W_G
        auto w_g = unit_root_subspace(d.G, kTol);
        auto both = PadicMatrix::hcat(w_g, d.pi_star * w_a);
        CHECK(both.rank(kTol) == w_g.rank(kTol));
        // rank additivity along the extension row
        auto w_b = unit_root_subspace(d.B, kTol);
        CHECK(w_g.rank(kTol) == w_b.rank(kTol)); // torus quotient has no slope 0
    }
}

TEST_CASE("diagram invariants and splitting lift") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto d = synthetic_diagram(seed, kP, 1 + static_cast<long>(seed % 2), kN);
        CHECK_NOTHROW(check_diagram(d, kTol));
        auto rep = verify_unit_root_lift(d, kTol);
        CHECK(rep.pass);
        CHECK(rep.rank_W_A == rep.rank_lift);
    }
}

TEST_CASE("perturbing the lift breaks the commuting square") {
    auto d = synthetic_diagram(42, kP, 1, kN);
    auto r_B = unit_root_splitting(d.B, d.quo_B, kTol);
    auto lifted = lift_splitting(d, r_B, kTol);
    // add a nonzero map H1(A,O) -> Inv(A) composed into H1(A)
    auto pert = d.A.hodge_sub.col_slice(0, 1); // one invariant column
    auto bad = lifted.r;
    for (long i = 0; i < bad.rows(); ++i)
        bad.at(i, 0) = bad.at(i, 0) + pert.at(i, 0);
    auto lhs = d.pi_star * bad;
    auto detour = d.p_star * r_B.r * d.beta.inverse() * d.gamma;
    CHECK(!lhs.equal_mod(detour, kTol));
}

TEST_CASE("degenerate diagram with trivial abelian part") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto d = tate_degenerate_diagram(seed, kP, 1, kN);
        CHECK_NOTHROW(check_diagram(d, kTol));
        auto rep = verify_unit_root_lift(d, kTol);
        CHECK(rep.pass);
        // W_A = ker(pi*) = image of the lattice column
        auto w_a = unit_root_subspace(d.A, kTol);
        CHECK(PadicMatrix::same_column_span(w_a, d.hom_gamma_A, kTol));
        CHECK(w_a.rank(kTol) == 1);
    }
}

TEST_CASE("conjugation covariance of the lift") {
    auto d = synthetic_diagram(7, kP, 1, kN);
    auto rep1 = verify_unit_root_lift(d, kTol);
    // re-run with a different seed (different conjugation of same construction)
    auto d2 = synthetic_diagram(8, kP, 1, kN);
    auto rep2 = verify_unit_root_lift(d2, kTol);
    CHECK(rep1.pass);
    CHECK(rep2.pass);
}

TEST_CASE("charpoly mod p detects unit-root rank") {
    auto d = synthetic_diagram(3, kP, 2, kN);
    auto w = unit_root_subspace(d.A, kTol);
    CHECK(slope_zero_multiplicity(d.A.phi) == w.rank(kTol));
}
