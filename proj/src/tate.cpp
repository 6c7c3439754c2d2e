#include "padh/tate.hpp"

namespace padh {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void require_q(const PadicElement& q) {
    if (q.is_zero() || q.valuation() < 1)
        throw MathError("Tate parameter must have positive valuation");
}

PadicElement one_at(long p, long prec) { return PadicElement::from_int(p, 1, prec); }

// s_k(q) = sum n^k q^n / (1 - q^n)
PadicElement s_series(long k, const PadicElement& q, long prec, long terms) {
    long p = q.prime();
    PadicElement acc = PadicElement::zero(p, prec);
    PadicElement qn = one_at(p, PadicElement::kMaxRel);
    for (long n = 1; n <= terms; ++n) {
        qn = qn * q;
        PadicElement nk = PadicElement::from_int(p, 1, PadicElement::kInfPrec);
        for (long i = 0; i < k; ++i)
            nk = nk * PadicElement::from_int(p, n, PadicElement::kInfPrec);
        acc = acc + nk * qn / (one_at(p, PadicElement::kMaxRel) - qn);
    }
    return acc.truncated(prec);
}

} // namespace

TateCurve TateCurve::make(const PadicElement& q, long prec) {
    require_q(q);
    TateCurve e;
    e.p = q.prime();
    e.q = q;
    e.prec = prec;
    e.terms_ = prec / q.valuation() + 6;
    PadicElement s3 = s_series(3, q, prec, e.terms_);
    PadicElement s5 = s_series(5, q, prec, e.terms_);
    long p = e.p;
    PadicElement five = PadicElement::from_int(p, 5, PadicElement::kInfPrec);
    PadicElement seven = PadicElement::from_int(p, 7, PadicElement::kInfPrec);
    PadicElement twelve = PadicElement::from_int(p, 12, PadicElement::kInfPrec);
    e.a4_ = -(five * s3);
    e.a6_ = -(five * s3 + seven * s5) / twelve;
    return e;
}

TatePoint normalize(const PadicElement& u, const PadicElement& q) {
    require_q(q);
    if (u.is_zero()) throw DivisionByIndistinguishableZero();
    long k = floor_div(u.valuation(), q.valuation());
    return TatePoint{u / q.pow(k)};
}

MembershipResult formal_membership(const TatePoint& pt, const PadicElement& q) {
    long p = pt.u.prime();
    long ord = pt.u.valuation();
    if (ord < 0 || ord >= q.valuation()) throw MathError("formal_membership: unnormalized input");
    if (ord != 0) return {Membership::other, ord};
    PadicElement d = pt.u - PadicElement::from_int(p, 1, PadicElement::kInfPrec);
    if (d.is_zero_to(1)) return {Membership::formal, 0};
    return {Membership::identity_component, 0};
}

PadicElement theta(const PadicElement& u, const PadicElement& q, long prec) {
    require_q(q);
    if (u.is_zero()) throw DivisionByIndistinguishableZero();
    if (u.valuation() < 0 || u.valuation() >= q.valuation())
        throw PrecisionExhausted("theta requires a normalized argument");
    long p = q.prime();
    long terms = prec / q.valuation() + 6;
    PadicElement one = one_at(p, PadicElement::kMaxRel);
    PadicElement acc = one - u;
    PadicElement qn = one;
    for (long n = 1; n <= terms; ++n) {
        qn = qn * q;
        acc = acc * (one - qn * u) * (one - qn / u);
    }
    return acc.truncated(prec);
}

PadicElement theta_ext(const PadicElement& u, const PadicElement& q, long prec) {
    require_q(q);
    if (u.is_zero()) throw DivisionByIndistinguishableZero();
    long k = floor_div(u.valuation(), q.valuation());
    PadicElement w = u / q.pow(k);
    PadicElement base = theta(w, q, prec);
    // theta(q^k w) = (-1)^k q^{-k(k-1)/2} w^{-k} theta(w)
    PadicElement factor = q.pow(-k * (k - 1) / 2) * w.pow(-k);
    if (k % 2 != 0) factor = -factor;
    return factor * base;
}

std::pair<PadicElement, PadicElement> weierstrass_coords(const TatePoint& pt,
                                                         const TateCurve& e) {
    const PadicElement& u = pt.u;
    const PadicElement& q = e.q;
    long p = e.p;
    PadicElement one = one_at(p, PadicElement::kMaxRel);
    PadicElement d = u - one;
    if (d.is_zero()) throw IdentityPoint();
    long terms = e.series_terms();

    auto xterm = [&](const PadicElement& w) {
        return w / ((one - w) * (one - w));
    };
    auto yterm3 = [&](const PadicElement& w) {
        PadicElement om = one - w;
        return (w * w) / (om * om * om);
    };

    PadicElement X = xterm(u);
    PadicElement Y = yterm3(u);
    PadicElement qn = one;
    for (long n = 1; n <= terms; ++n) {
        qn = qn * q;
        PadicElement qu = qn * u;
        PadicElement qiu = qn / u;
        PadicElement qq = qn / ((one - qn) * (one - qn));
        X = X + xterm(qu) + xterm(qiu) - (qq + qq);
        Y = Y + yterm3(qu) - qiu / ((one - qiu) * (one - qiu) * (one - qiu)) + qq;
    }
    return {X.truncated(e.prec), Y.truncated(e.prec)};
}

BiextPoint scalar_mul(const PadicElement& alpha, const BiextPoint& x) {
    return BiextPoint{alpha * x.c, x.u, x.v};
}

BiextPoint mul_first(const BiextPoint& x, const BiextPoint& y) {
    if (!(x.v - y.v).is_zero()) throw IncompatibleFibers();
    return BiextPoint{x.c * y.c, x.u * y.u, x.v};
}

BiextPoint mul_second(const BiextPoint& x, const BiextPoint& y) {
    if (!(x.u - y.u).is_zero()) throw IncompatibleFibers();
    return BiextPoint{x.c * y.c, x.u, x.v * y.v};
}

BiextPoint gamma_normalize(const BiextPoint& x, const PadicElement& q) {
    require_q(q);
    long k = floor_div(x.u.valuation(), q.valuation());
    // undo k lattice steps in the first factor: (c; u, v) -> (c v^k; q^{-k} u, v)
    PadicElement c = x.c * x.v.pow(k);
    PadicElement u = x.u / q.pow(k);
    long m = floor_div(x.v.valuation(), q.valuation());
    // then in the second factor, using the normalized u
    c = c * u.pow(m);
    PadicElement v = x.v / q.pow(m);
    return BiextPoint{c, u, v};
}

BiextPoint int_mul(long m, long n, const BiextPoint& x) {
    return BiextPoint{x.c.pow(m * n), x.u.pow(m), x.v.pow(n)};
}

} // namespace padh
