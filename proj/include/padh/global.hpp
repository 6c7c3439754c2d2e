#pragma once

#include "padh/heights.hpp"
#include "padh/powerseries.hpp"
#include "padh/rational_ec.hpp"

namespace padh {

/// Compatible family of functionals rho_v on Q^x with sum_v rho_v = 0:
/// the branch at p is the Iwasawa one (the product formula forces
/// lambda(p) = 0), rho_l is unramified (valuation times log_p l), and the
/// whole family is scaled by delta.
struct RhoFamily {
    long p = 0;
    PadicElement delta;
    long prec = 0;

    static RhoFamily make(long p, const PadicElement& delta, long prec);

    LogBranch branch() const;
    /// Iwasawa-branch log of a rational, as a p-adic number.
    PadicElement log_of(const mpq_class& x) const;
    PadicElement at_p(const mpq_class& x) const;
    PadicElement at_ell(long ell, const mpq_class& x) const;
};

/// sum_v rho_v(alpha); the prime support of alpha is found by trial division.
PadicElement product_formula_check(const mpq_class& alpha, const RhoFamily& rho);

/// Solve j(q) = j for q with positive valuation by Newton iteration on the
/// q-expansion; ord(q) = -ord_p(j).
PadicElement q_from_j(const PadicElement& j, long prec);
PadicElement q_parameter(const CurveQ& e, long p, long prec);

/// Strict isomorphism u = U(t) between the formal group of the Tate model
/// (t = -X/Y) and the multiplicative formal group, U(t) = 1 + t + O(t^2).
PSeries formal_iso_series(const TateCurve& t, long nterms);
/// Formal logarithm L(t) of the Tate model, L(t) = t + O(t^2);
/// lambda(U(t)) = L(t).
PSeries formal_log_series(const TateCurve& t, long nterms);

/// u-parameter of a point on the Tate model from its Weierstrass coordinates;
/// requires a formal point (t-valuation >= 1).
PadicElement u_from_tate_xy(const PadicElement& x, const PadicElement& y, const PSeries& u_series);

/// Bundle mapping formal points of a rational curve to u-parameters at p.
struct TateModelIso {
    CurveQ curve;
    long p = 0;
    TateCurve tate;
    PadicElement w2, w; // short-model scaling (squared and chosen root)
    PSeries u_series;
    PSeries log_series;
    long prec = 0;
};
TateModelIso make_tate_iso(const CurveQ& e, long p, long prec);
/// u-parameter of a rational point through the model isomorphism;
/// the identity maps to 1.
PadicElement u_parameter(const TateModelIso& iso, const PointQ& pt);

/// Kernel-of-reduction level of a point at ell on the given integral model:
/// half the ell-valuation of the x-denominator (0 for ell-integral points).
long kernel_level(const PointQ& pt, long ell);

/// Canonical unramified splitting at ell != p of the cover point with fiber
/// scalar c over (a, (v) - (O)), by the divisibility algorithm into the
/// kernel of reduction.
PadicElement unramified_splitting(const CurveQ& e, long ell, const mpq_class& c,
                                  const PointQ& a, const PointQ& v, const RhoFamily& rho);

struct QWeighted {
    long weight;
    PointQ pt;
};
struct PairLocalValues {
    PadicElement p_part;
    PadicElement away_part;
    PadicElement total;
};
/// Sum of local pairing values of a degree-zero divisor against a degree-zero
/// cycle; all points must lie in the kernel of reduction at p and at every
/// bad prime of the model.
PairLocalValues pair_divisor_cycle(const std::vector<QWeighted>& divisor,
                                   const std::vector<QWeighted>& cycle,
                                   const RhoFamily& rho, const TateModelIso& iso);

struct GlobalHeightResult {
    PadicElement total;
    PadicElement p_part;
    PadicElement away_part;
    long multiplier_p = 1; // multiple taken of the first argument
    long multiplier_q = 1; // multiple taken of the second argument
    bool torsion_route = false;
};
/// Global pairing of P against Q summed over all places; divisor_shift > 0
/// replaces D = (Q') - (O) by (Q' + R) - (R) with R = divisor_shift * P'.
GlobalHeightResult global_height(const CurveQ& e, const PointQ& point_p,
                                 const PointQ& point_q, const RhoFamily& rho,
                                 long divisor_shift = 0);

} // namespace padh
