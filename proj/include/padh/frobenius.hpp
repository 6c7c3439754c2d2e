#pragma once

#include <cstdint>
#include <string>

#include "padh/linalg.hpp"

namespace padh {

/// A Frobenius operator on a first de Rham cohomology space together with the
/// invariant-differential (Hodge) subspace.
struct FrobeniusModule {
    long dim = 0;
    PadicMatrix phi;       // dim x dim
    PadicMatrix hodge_sub; // dim x h, independent columns
    std::string label;     // one of A, B, G, T, Gamma

    long hodge_dim() const { return hodge_sub.cols(); }
    long quotient_dim() const { return dim - hodge_dim(); }
};

/// A splitting of the Hodge filtration: a section r of the quotient map and
/// the complementary projection s onto the invariant differentials.
struct Splitting {
    PadicMatrix r; // dim x (dim - h), section of the quotient map
    PadicMatrix s; // h x dim, projection in hodge-basis coordinates
};

/// Multiplicity of slope 0 in the characteristic polynomial of phi.
long slope_zero_multiplicity(const PadicMatrix& phi);

/// Basis (columns) of the subspace on which phi acts with slope 0, computed
/// by lattice iteration; requires the slope-0 multiplicity to match the
/// quotient dimension (ordinarity).
PadicMatrix unit_root_subspace(const FrobeniusModule& m, long zero_tol);

/// Canonical coordinates on the Hodge quotient: a (dim-h) x dim matrix with
/// kernel exactly the span of hodge_sub, normalized on the complementary
/// standard basis vectors.
PadicMatrix canonical_quotient_map(const FrobeniusModule& m, long zero_tol);

/// The unique splitting whose section image is the unit-root subspace,
/// expressed in the given quotient coordinates.
Splitting unit_root_splitting(const FrobeniusModule& m, long zero_tol);
Splitting unit_root_splitting(const FrobeniusModule& m, const PadicMatrix& quo, long zero_tol);

/// The semiabelian uniformization data: modules for the abelian-variety total
/// space A, the extension G, the abelian part B, the torus T, and the lattice
/// character group, with the connecting maps of the two exact diagrams.
struct SemiabelianDiagram {
    long p = 0;
    long torus_rank = 0;
    FrobeniusModule A, G, B, T;

    PadicMatrix quo_A; // H1(A) -> H1(A,O)
    PadicMatrix quo_B; // H1(B) -> H1(B,O)
    PadicMatrix quo_G; // H1(G) -> H

    PadicMatrix alpha;       // Inv(A) -> Inv(G), iso (hodge-basis coords)
    PadicMatrix beta;        // H1(B,O) -> H, iso
    PadicMatrix gamma;       // H1(A,O) -> H
    PadicMatrix pi_star;     // H1(A) -> H1(G)
    PadicMatrix p_star;      // H1(B) -> H1(G)
    PadicMatrix g_star;      // H1(G) -> H1(T)
    PadicMatrix hom_gamma_A; // Hom(lattice,K) -> H1(A)
    PadicMatrix hom_gamma_O; // Hom(lattice,K) -> H1(A,O)
};

/// Verify the exactness, commutativity and Frobenius-equivariance invariants;
/// throws DiagramInconsistent naming the first failed check.
void check_diagram(const SemiabelianDiagram& d, long zero_tol);

/// Lift a splitting of the B-row through the two diagrams to a splitting of
/// the A-row (the explicit section/projection recipe); asserts the
/// square-with-detour commutativity of the result.
Splitting lift_splitting(const SemiabelianDiagram& d, const Splitting& r_B, long zero_tol);

struct LiftReport {
    bool pass = false;
    long rank_W_A = 0;
    long rank_lift = 0;
    long residual_zero_digits = 0;
    std::string detail;
};

/// Check that lifting the unit-root splitting of B yields exactly the
/// unit-root subspace of A.
LiftReport verify_unit_root_lift(const SemiabelianDiagram& d, long zero_tol);

/// Deterministic synthetic ordinary diagram: block-triangular standard form
/// conjugated by seeded random basis changes.  phi_B_opt may supply a genuine
/// abelian-part Frobenius (2g x 2g, ordinary); otherwise a random ordinary
/// 2x2 block is generated.
SemiabelianDiagram synthetic_diagram(std::uint64_t seed, long p, long torus_rank, long rel_prec,
                                     const PadicMatrix* phi_B_opt = nullptr);

/// Degenerate diagram with trivial abelian part (the rigid-uniformized curve
/// case): B has dimension 0.
SemiabelianDiagram tate_degenerate_diagram(std::uint64_t seed, long p, long torus_rank,
                                           long rel_prec);

} // namespace padh
