#pragma once

#include "padh/padic.hpp"

namespace padh {

/// The rigid-analytic quotient of the multiplicative group by q^Z, presented
/// through its classical parametrization series on the model
/// Y^2 + XY = X^3 + a4 X + a6.
struct TateCurve {
    long p = 0;
    PadicElement q;
    long prec = 0; // target absolute precision for series values

    static TateCurve make(const PadicElement& q, long prec);

    PadicElement a4() const { return a4_; }
    PadicElement a6() const { return a6_; }
    /// 1 - (number of series terms kept); tails certified below p^prec.
    long series_terms() const { return terms_; }

private:
    PadicElement a4_, a6_;
    long terms_ = 0;
};

struct TatePoint {
    PadicElement u; // representative with 0 <= ord(u) < ord(q)
};

/// Canonical representative of u modulo q^Z.
TatePoint normalize(const PadicElement& u, const PadicElement& q);

enum class Membership { formal, identity_component, other };
struct MembershipResult {
    Membership kind;
    long component = 0; // ord(u) of the normalized representative
};
MembershipResult formal_membership(const TatePoint& pt, const PadicElement& q);

/// Theta value (1-u) prod (1-q^n u)(1-q^n/u) for a normalized u.
PadicElement theta(const PadicElement& u, const PadicElement& q, long prec);
/// Theta extended to all of the multiplicative group through the automorphy
/// relation against powers of q.
PadicElement theta_ext(const PadicElement& u, const PadicElement& q, long prec);

/// Parametrization: u -> (X, Y) on Y^2 + XY = X^3 + a4 X + a6.
std::pair<PadicElement, PadicElement> weierstrass_coords(const TatePoint& pt,
                                                         const TateCurve& e);

/// A point of the Poincare-bundle cover: fiber coordinate c over (u, v).
struct BiextPoint {
    PadicElement c, u, v;
};

BiextPoint scalar_mul(const PadicElement& alpha, const BiextPoint& x);
/// Partial law over a common second coordinate.
BiextPoint mul_first(const BiextPoint& x, const BiextPoint& y);
/// Partial law over a common first coordinate.
BiextPoint mul_second(const BiextPoint& x, const BiextPoint& y);
/// Canonical representative under the two lattice actions
/// (c; u, v) -> (c v^{-1}; qu, v) and (c; u, v) -> (c u^{-1}; u, qv).
BiextPoint gamma_normalize(const BiextPoint& x, const PadicElement& q);
/// (m, n)-multiple across both partial laws: (c^{mn}; u^m, v^n).
BiextPoint int_mul(long m, long n, const BiextPoint& x);

} // namespace padh
