#pragma once

#include <vector>

#include "padh/logmap.hpp"
#include "padh/tate.hpp"

namespace padh {

/// Canonical trivialization of the formal part of the cover: the fiber
/// coordinate of the gamma-normalized representative, defined when both
/// projections land in the formal part.
PadicElement sigma_tilde(const BiextPoint& x, const PadicElement& q);

/// Canonical lambda-splitting by the divisibility algorithm: multiply the
/// point into the formal part, read the trivialization there, divide back.
PadicElement mt_splitting(const BiextPoint& x, const PadicElement& q,
                          const LogBranch& lambda);

/// Independent closed-form evaluation used to cross-check mt_splitting.
/// Invariant under both lattice descents, so it accepts raw cover coordinates.
PadicElement closed_form_oracle(const BiextPoint& x, const PadicElement& q,
                                const LogBranch& lambda);

/// Coefficients of the ansatz
///   tau(c; u, v) = lambda(c) + a(v) lambda(u) + b(v) ord(u),
///   a(v) = A1 lambda(v) + A2 ord(v),  b(v) = B1 lambda(v) + B2 ord(v),
/// solved from the restriction / descent / local-constancy constraints.
struct SplittingConstraints {
    PadicElement a1, a2, b1, b2;
};

/// Solve the constraint system selecting the unit-root splitting
/// (locally constant a). With schneider = true the local-constancy condition
/// is swapped for a(v) = lambda(v)/lambda(q); this alternate splitting exists
/// only on ramified branches and serves as a negative control.
SplittingConstraints solve_splitting_constraints(const PadicElement& q,
                                                 const LogBranch& lambda,
                                                 bool schneider = false);

/// Evaluate the splitting cut out by the constraint solution.
PadicElement unit_root_splitting_tate(const BiextPoint& x, const PadicElement& q,
                                      const LogBranch& lambda,
                                      bool schneider = false);
PadicElement eval_constrained_splitting(const BiextPoint& x,
                                        const SplittingConstraints& cs,
                                        const LogBranch& lambda);

/// Degree-zero divisor paired with a degree-zero cycle, both given through
/// multiplicative parameters of their points.
struct WeightedPoint {
    long weight;
    PadicElement u;
};
struct DivisorZeroCyclePair {
    std::vector<WeightedPoint> divisor; // sum m_j (Q_j), sum m_j = 0
    std::vector<WeightedPoint> cycle;   // sum n_i (a_i), sum n_i = 0
};

enum class SplittingKind { mazur_tate, unit_root, closed_form };

/// Local height pairing <D, z> = delta( sum_i n_i tau(s_D(a_i)) ) where the
/// rational section s_D is realized through theta quotients on the cover.
PadicElement local_pairing(const DivisorZeroCyclePair& pair, const TateCurve& e,
                           const LogBranch& lambda, const PadicElement& delta,
                           SplittingKind kind);

struct SplittingSample {
    PadicElement c, u, v;
    PadicElement tau_mt, tau_ur;
    long diff_valuation; // valuation of tau_mt - tau_ur (abs precision if zero)
};

struct SplittingReport {
    long p = 0;
    PadicElement q;
    PadicElement branch_value_at_p;
    PadicElement delta;
    unsigned long long seed = 0;
    std::vector<SplittingSample> samples;
    long min_diff_valuation = 0;
    long required_valuation = 0;
    bool pass = false;
};

/// Evaluate both splitting pipelines on seeded random and structured cover
/// points; pass iff every difference vanishes to the required precision.
SplittingReport splitting_comparison_harness(const TateCurve& e,
                                             const LogBranch& lambda,
                                             const PadicElement& delta,
                                             long samples,
                                             unsigned long long seed,
                                             long required_valuation,
                                             bool schneider = false);

} // namespace padh
