#include "padh/frobenius.hpp"

#include <random>

namespace padh {

long slope_zero_multiplicity(const PadicMatrix& phi) {
    long n = phi.rows();
    if (n == 0) return 0;
    PadicPoly cp = charpoly(phi);
    for (long i = 0; i <= n; ++i) {
        const PadicElement& c = cp.coeff[static_cast<size_t>(i)];
        if (!c.is_zero() && c.valuation() == 0) return n - i;
    }
    return 0;
}

PadicMatrix unit_root_subspace(const FrobeniusModule& m, long zero_tol) {
    long n = m.dim;
    if (n == 0) return m.phi;
    long p = m.phi.at(0, 0).prime();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (!m.phi.at(i, j).is_zero() && m.phi.at(i, j).valuation() < 0)
                throw MathError("unit_root_subspace: operator not lattice-normalized");
    long r0 = slope_zero_multiplicity(m.phi);
    if (r0 != m.quotient_dim()) throw NotOrdinary();
    if (r0 == 0) return PadicMatrix::zero_matrix(n, 0, p, zero_tol);
    // positive slopes of an integral operator are >= 1/dim, so this power
    // pushes every non-unit-root direction below the tolerance
    PadicMatrix power = m.phi.pow(n * (zero_tol + 4));
    PadicMatrix w = power.column_echelon(zero_tol);
    if (w.cols() != r0) throw PrecisionExhausted("unit-root lattice did not stabilize");
    return w;
}

PadicMatrix canonical_quotient_map(const FrobeniusModule& m, long zero_tol) {
    long n = m.dim;
    long h = m.hodge_dim();
    long p = m.phi.rows() > 0 ? m.phi.at(0, 0).prime()
                              : (h > 0 ? m.hodge_sub.at(0, 0).prime() : 0);
    if (h == 0) return PadicMatrix::identity(n, p, PadicElement::kInfPrec);
    std::vector<long> pivot_rows;
    PadicMatrix ech = m.hodge_sub.column_echelon(zero_tol, &pivot_rows);
    if (ech.cols() != h) throw DegenerateFiltration();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (long r : pivot_rows) is_pivot[static_cast<size_t>(r)] = true;
    PadicMatrix ec(n, n - h, PadicElement::exact_zero(p));
    long c = 0;
    for (long i = 0; i < n; ++i)
        if (!is_pivot[static_cast<size_t>(i)])
            ec.at(i, c++) = PadicElement::from_int(p, 1, PadicElement::kInfPrec);
    PadicMatrix minv = PadicMatrix::hcat(m.hodge_sub, ec).inverse();
    return minv.row_slice(h, n);
}

Splitting unit_root_splitting(const FrobeniusModule& m, const PadicMatrix& quo, long zero_tol) {
    long n = m.dim, h = m.hodge_dim();
    PadicMatrix w = unit_root_subspace(m, zero_tol);
    Splitting out;
    if (n == 0) {
        out.r = w;
        out.s = PadicMatrix(0, 0, PadicElement());
        return out;
    }
    try {
        PadicMatrix full_inv = PadicMatrix::hcat(m.hodge_sub, w).inverse();
        out.s = full_inv.row_slice(0, h);
    } catch (const MathError&) {
        throw DegenerateFiltration();
    }
    if (w.cols() > 0) {
        try {
            out.r = w * (quo * w).inverse();
        } catch (const MathError&) {
            throw DegenerateFiltration();
        }
    } else {
        out.r = w;
    }
    return out;
}

Splitting unit_root_splitting(const FrobeniusModule& m, long zero_tol) {
    return unit_root_splitting(m, canonical_quotient_map(m, zero_tol), zero_tol);
}

namespace {

bool is_zero_matrix(const PadicMatrix& m, long tol) {
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero_to(tol)) return false;
    return true;
}

void req(bool ok, const std::string& what) {
    if (!ok) throw DiagramInconsistent(what);
}

bool invertible(const PadicMatrix& m) {
    if (m.rows() != m.cols()) return false;
    try {
        m.inverse();
        return true;
    } catch (const MathError&) {
        return false;
    }
}

// image(a) contained in image(b) at the tolerance
bool image_contained(const PadicMatrix& a, const PadicMatrix& b, long tol) {
    return PadicMatrix::hcat(b, a).rank(tol) == b.rank(tol);
}

} // namespace

void check_diagram(const SemiabelianDiagram& d, long zero_tol) {
    long t = d.torus_rank;
    long dB = d.B.dim, gB = dB / 2, dG = d.G.dim, dA = d.A.dim;
    long tol = zero_tol;
    req(dG == dB + t && dA == dG + t, "dimension bookkeeping");
    req(d.A.hodge_dim() == gB + t && d.B.hodge_dim() == gB && d.G.hodge_dim() == gB + t,
        "hodge dimensions");

    // rows exact: quo o hodge = 0, ranks complementary
    req(dB == 0 || is_zero_matrix(d.quo_B * d.B.hodge_sub, tol), "B row: quo o hodge = 0");
    req(is_zero_matrix(d.quo_G * d.G.hodge_sub, tol), "G row: quo o hodge = 0");
    req(is_zero_matrix(d.quo_A * d.A.hodge_sub, tol), "A row: quo o hodge = 0");
    req(d.quo_B.rank(tol) == gB && d.quo_G.rank(tol) == gB && d.quo_A.rank(tol) == gB + t,
        "quotient maps surjective");
    req(d.B.hodge_sub.rank(tol) == gB && d.G.hodge_sub.rank(tol) == gB + t &&
            d.A.hodge_sub.rank(tol) == gB + t,
        "hodge inclusions injective");

    req((gB == 0 || invertible(d.beta)) && invertible(d.alpha), "alpha, beta invertible");

    // extension diagram: columns and commuting square
    req((d.quo_G * d.p_star).equal_mod(d.beta * d.quo_B, tol),
        "quo_G o p* = beta o quo_B");
    req(is_zero_matrix(d.g_star * d.p_star, tol), "g* o p* = 0");
    req(d.p_star.rank(tol) == dB, "p* injective");
    req(d.g_star.rank(tol) == t, "g* surjective");
    req(image_contained(d.p_star * d.B.hodge_sub, d.G.hodge_sub, tol),
        "p* respects invariant differentials");

    // uniformization diagram
    req((d.pi_star * d.A.hodge_sub).equal_mod(d.G.hodge_sub * d.alpha, tol),
        "pi* o hodge_A = hodge_G o alpha");
    req((d.gamma * d.quo_A).equal_mod(d.quo_G * d.pi_star, tol),
        "gamma o quo_A = quo_G o pi*");
    req(is_zero_matrix(d.pi_star * d.hom_gamma_A, tol), "pi* kills the lattice column");
    req(d.pi_star.rank(tol) == dG, "pi* surjective");
    req(d.hom_gamma_A.rank(tol) == t, "lattice column injective");
    req((d.quo_A * d.hom_gamma_A).equal_mod(d.hom_gamma_O, tol),
        "lattice column compatible with the quotient");
    req(is_zero_matrix(d.gamma * d.hom_gamma_O, tol), "gamma kills the lattice column");
    req(d.gamma.rank(tol) == gB, "gamma surjective");

    // Frobenius equivariance; phi_T = q, phi on the lattice = id
    long p = d.p;
    auto q_el = PadicElement::from_int(p, p, PadicElement::kInfPrec);
    req(d.T.phi.equal_mod(PadicMatrix::identity(t, p, PadicElement::kInfPrec) * q_el, tol),
        "torus Frobenius is multiplication by q");
    req(dB == 0 || (d.G.phi * d.p_star).equal_mod(d.p_star * d.B.phi, tol),
        "p* commutes with Frobenius");
    req((d.G.phi * d.pi_star).equal_mod(d.pi_star * d.A.phi, tol),
        "pi* commutes with Frobenius");
    req((d.g_star * d.G.phi).equal_mod(d.T.phi * d.g_star, tol),
        "g* commutes with Frobenius");
    req((d.A.phi * d.hom_gamma_A).equal_mod(d.hom_gamma_A, tol),
        "lattice Frobenius is the identity");
}

Splitting lift_splitting(const SemiabelianDiagram& d, const Splitting& r_B, long zero_tol) {
    check_diagram(d, zero_tol);
    long t = d.torus_rank, dB = d.B.dim, gB = dB / 2, dG = d.G.dim, dA = d.A.dim;
    long p = d.p;
    // section of the G row through the B section
    PadicMatrix r_G = dB > 0 ? d.p_star * r_B.r * d.beta.inverse()
                             : PadicMatrix::zero_matrix(dG, 0, p, zero_tol);
    // complementary projection on G
    PadicMatrix s_G =
        PadicMatrix::hcat(d.G.hodge_sub, r_G).inverse().row_slice(0, gB + t);
    // projection on A, then the section in the other direction
    PadicMatrix s_A = d.alpha.inverse() * s_G * d.pi_star;
    PadicMatrix M = PadicMatrix::vcat(d.quo_A, s_A);
    PadicMatrix rhs = PadicMatrix::vcat(
        PadicMatrix::identity(gB + t, p, PadicElement::kInfPrec),
        PadicMatrix::zero_matrix(gB + t, gB + t, p, PadicElement::kInfPrec));
    PadicMatrix L = M.inverse() * rhs;
    // commutativity of the lifted square
    PadicMatrix lhs = d.pi_star * L;
    PadicMatrix detour = dB > 0
                             ? d.p_star * r_B.r * d.beta.inverse() * d.gamma
                             : PadicMatrix::zero_matrix(dG, gB + t, p, zero_tol);
    if (!lhs.equal_mod(detour, zero_tol))
        throw DiagramInconsistent("lifted splitting does not close the square");
    (void)dA;
    return Splitting{L, s_A};
}

LiftReport verify_unit_root_lift(const SemiabelianDiagram& d, long zero_tol) {
    Splitting r_B = unit_root_splitting(d.B, d.quo_B, zero_tol);
    Splitting lifted = lift_splitting(d, r_B, zero_tol);
    PadicMatrix w_A = unit_root_subspace(d.A, zero_tol);
    LiftReport rep;
    rep.rank_W_A = w_A.rank(zero_tol);
    rep.rank_lift = lifted.r.rank(zero_tol);
    rep.pass = PadicMatrix::same_column_span(lifted.r, w_A, zero_tol);
    rep.residual_zero_digits = zero_tol;
    rep.detail = rep.pass ? "lifted section image equals the slope-0 subspace"
                          : "span mismatch";
    return rep;
}

namespace {

PadicMatrix random_integral(std::mt19937_64& rng, long rows, long cols, long p, long rel) {
    PadicMatrix m(rows, cols, PadicElement::exact_zero(p));
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            m.at(i, j) =
                PadicElement::from_int(p, static_cast<long>(rng() % 41) - 20, rel);
    return m;
}

PadicMatrix random_invertible(std::mt19937_64& rng, long n, long p, long rel) {
    // unit-lower times unit-upper triangular: invertible over the integers of Q_p
    PadicMatrix l = PadicMatrix::identity(n, p, rel);
    PadicMatrix u = PadicMatrix::identity(n, p, rel);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            if (i > j) l.at(i, j) = PadicElement::from_int(p, static_cast<long>(rng() % 19) - 9, rel);
            if (i < j) u.at(i, j) = PadicElement::from_int(p, static_cast<long>(rng() % 19) - 9, rel);
        }
    return l * u;
}

// place `block` into m at offset (r0, c0)
void put_block(PadicMatrix& m, const PadicMatrix& block, long r0, long c0) {
    for (long i = 0; i < block.rows(); ++i)
        for (long j = 0; j < block.cols(); ++j) m.at(r0 + i, c0 + j) = block.at(i, j);
}

} // namespace

SemiabelianDiagram synthetic_diagram(std::uint64_t seed, long p, long torus_rank, long rel_prec,
                                     const PadicMatrix* phi_B_opt) {
    std::mt19937_64 rng(seed);
    long t = torus_rank;
    long rel = rel_prec;
    auto one = [&](long n) { return PadicMatrix::identity(n, p, PadicElement::kInfPrec); };
    auto zero = [&](long r, long c) {
        return PadicMatrix::zero_matrix(r, c, p, PadicElement::kInfPrec);
    };

    PadicMatrix phi_B(0, 0, PadicElement());
    if (phi_B_opt) {
        phi_B = *phi_B_opt;
    } else {
        // random ordinary 2x2: conjugate diag(unit, p*unit); keep the unit-root
        // line transverse to the invariant line e1
        for (int attempt = 0; attempt < 64; ++attempt) {
            PadicMatrix dgl = zero(2, 2);
            dgl.at(0, 0) =
                PadicElement::from_int(p, 1 + static_cast<long>(rng() % (p - 1)), rel);
            dgl.at(1, 1) =
                PadicElement::from_int(p, p * (1 + static_cast<long>(rng() % (p - 1))), rel);
            PadicMatrix g = random_invertible(rng, 2, p, rel);
            if (g.at(1, 0).is_zero() || g.at(1, 0).valuation() > 0) continue;
            phi_B = g * dgl * g.inverse();
            break;
        }
        if (phi_B.rows() == 0) throw MathError("synthetic_diagram: generation failed");
    }
    long dB = phi_B.rows(), gB = dB / 2;
    long dG = dB + t, dA = dG + t;

    SemiabelianDiagram d;
    d.p = p;
    d.torus_rank = t;

    // standard-coordinate model -----------------------------------------
    // H1(B): invariant part first, quotient part after
    d.B.dim = dB;
    d.B.label = "B";
    d.B.phi = phi_B;
    d.B.hodge_sub = zero(dB, gB);
    put_block(d.B.hodge_sub, one(gB), 0, 0);
    d.quo_B = zero(gB, dB);
    put_block(d.quo_B, one(gB), 0, gB);

    // H1(G) = B-block then torus block
    d.G.dim = dG;
    d.G.label = "G";
    PadicMatrix c_mix = random_integral(rng, dB, t, p, rel);
    d.G.phi = zero(dG, dG);
    put_block(d.G.phi, phi_B, 0, 0);
    put_block(d.G.phi, c_mix, 0, dB);
    put_block(d.G.phi, one(t) * PadicElement::from_int(p, p, PadicElement::kInfPrec), dB, dB);
    d.G.hodge_sub = zero(dG, gB + t);
    put_block(d.G.hodge_sub, one(gB), 0, 0);
    put_block(d.G.hodge_sub, one(t), dB, gB);
    d.quo_G = zero(gB, dG);
    put_block(d.quo_G, one(gB), 0, gB);

    d.T.dim = t;
    d.T.label = "T";
    d.T.phi = one(t) * PadicElement::from_int(p, p, PadicElement::kInfPrec);
    d.T.hodge_sub = one(t);

    // H1(A) = lattice block then G-block
    d.A.dim = dA;
    d.A.label = "A";
    PadicMatrix d_mix = random_integral(rng, t, dG, p, rel);
    d.A.phi = zero(dA, dA);
    put_block(d.A.phi, one(t), 0, 0);
    put_block(d.A.phi, d_mix, 0, t);
    put_block(d.A.phi, d.G.phi, t, t);
    d.A.hodge_sub = zero(dA, gB + t);
    put_block(d.A.hodge_sub, d.G.hodge_sub, t, 0);
    d.quo_A = zero(gB + t, dA);
    put_block(d.quo_A, one(t), 0, 0);
    put_block(d.quo_A, one(gB), t, t + gB);

    d.alpha = one(gB + t);
    d.beta = one(gB);
    d.gamma = zero(gB, gB + t);
    put_block(d.gamma, one(gB), 0, t);
    d.pi_star = zero(dG, dA);
    put_block(d.pi_star, one(dG), 0, t);
    d.p_star = zero(dG, dB);
    put_block(d.p_star, one(dB), 0, 0);
    d.g_star = zero(t, dG);
    put_block(d.g_star, one(t), 0, dB);
    d.hom_gamma_A = zero(dA, t);
    put_block(d.hom_gamma_A, one(t), 0, 0);
    d.hom_gamma_O = zero(gB + t, t);
    put_block(d.hom_gamma_O, one(t), 0, 0);

    // conjugate by seeded random basis changes --------------------------
    PadicMatrix P_A = random_invertible(rng, dA, p, rel);
    PadicMatrix P_G = random_invertible(rng, dG, p, rel);
    PadicMatrix P_B = random_invertible(rng, dB, p, rel);
    PadicMatrix P_T = random_invertible(rng, t, p, rel);
    PadicMatrix P_Gam = random_invertible(rng, t, p, rel);
    PadicMatrix P_IA = random_invertible(rng, gB + t, p, rel);
    PadicMatrix P_IG = random_invertible(rng, gB + t, p, rel);
    PadicMatrix P_OA = random_invertible(rng, gB + t, p, rel);
    PadicMatrix P_OB = random_invertible(rng, gB, p, rel);
    PadicMatrix P_H = random_invertible(rng, gB, p, rel);

    auto conj = [](const PadicMatrix& py, const PadicMatrix& f, const PadicMatrix& px) {
        return py.inverse() * f * px;
    };

    d.A.phi = conj(P_A, d.A.phi, P_A);
    d.G.phi = conj(P_G, d.G.phi, P_G);
    d.B.phi = dB > 0 ? conj(P_B, d.B.phi, P_B) : d.B.phi;
    d.T.phi = conj(P_T, d.T.phi, P_T);
    d.A.hodge_sub = conj(P_A, d.A.hodge_sub, P_IA);
    d.G.hodge_sub = conj(P_G, d.G.hodge_sub, P_IG);
    d.B.hodge_sub = dB > 0 ? conj(P_B, d.B.hodge_sub, PadicMatrix::identity(gB, p, rel))
                           : d.B.hodge_sub;
    d.quo_A = conj(P_OA, d.quo_A, P_A);
    d.quo_B = dB > 0 ? conj(P_OB, d.quo_B, P_B) : d.quo_B;
    d.quo_G = conj(P_H, d.quo_G, P_G);
    d.alpha = conj(P_IG, d.alpha, P_IA);
    d.beta = gB > 0 ? conj(P_H, d.beta, P_OB) : d.beta;
    d.gamma = conj(P_H, d.gamma, P_OA);
    d.pi_star = conj(P_G, d.pi_star, P_A);
    d.p_star = dB > 0 ? conj(P_G, d.p_star, P_B) : d.p_star;
    d.g_star = conj(P_T, d.g_star, P_G);
    d.hom_gamma_A = conj(P_A, d.hom_gamma_A, P_Gam);
    d.hom_gamma_O = conj(P_OA, d.hom_gamma_O, P_Gam);
    return d;
}

SemiabelianDiagram tate_degenerate_diagram(std::uint64_t seed, long p, long torus_rank,
                                           long rel_prec) {
    PadicMatrix empty(0, 0, PadicElement());
    return synthetic_diagram(seed, p, torus_rank, rel_prec, &empty);
}

} // namespace padh
