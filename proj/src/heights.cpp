#include "padh/heights.hpp"

#include <numeric>
#include <random>

#include "padh/linalg.hpp"

namespace padh {

namespace {

PadicElement exact_int(long p, long n) {
    return PadicElement::from_int(p, n, PadicElement::kInfPrec);
}

bool is_formal(const PadicElement& u, const PadicElement& q) {
    auto pt = normalize(u, q);
    return formal_membership(pt, q).kind == Membership::formal;
}

/// Smallest multiplier m (ordered by size) with u^m in the formal part.
long find_formal_multiplier(const PadicElement& u, const PadicElement& q) {
    long oq = q.valuation();
    long r = ((u.valuation() % oq) + oq) % oq;
    long m0 = oq / std::gcd(r, oq); // multiples land on the identity component
    long p = u.prime();
    long bound = (p - 1) * p * p * p;
    for (long j = 1; j <= bound; ++j) {
        long m = m0 * j;
        if (is_formal(u.pow(m), q)) return m;
    }
    throw SearchBoundExceeded();
}

} // namespace

PadicElement sigma_tilde(const BiextPoint& x, const PadicElement& q) {
    BiextPoint y = gamma_normalize(x, q);
    if (!is_formal(y.u, q) || !is_formal(y.v, q)) throw NotInFormalPart();
    return y.c;
}

PadicElement mt_splitting(const BiextPoint& x, const PadicElement& q,
                          const LogBranch& lambda) {
    if (x.c.is_zero() || x.u.is_zero() || x.v.is_zero())
        throw DivisionByIndistinguishableZero();
    long m = find_formal_multiplier(x.u, q);
    long n = find_formal_multiplier(x.v, q);
    BiextPoint y = gamma_normalize(int_mul(m, n, x), q);
    return lambda(sigma_tilde(y, q)) / exact_int(q.prime(), m * n);
}

PadicElement closed_form_oracle(const BiextPoint& x, const PadicElement& q,
                                const LogBranch& lambda) {
    long p = q.prime();
    PadicElement oq = exact_int(p, q.valuation());
    PadicElement ou = exact_int(p, x.u.valuation());
    PadicElement ov = exact_int(p, x.v.valuation());
    return lambda(x.c) + (ou * lambda(x.v) + ov * lambda(x.u)) / oq -
           ou * ov * lambda(q) / (oq * oq);
}

SplittingConstraints solve_splitting_constraints(const PadicElement& q,
                                                 const LogBranch& lambda,
                                                 bool schneider) {
    long p = q.prime();
    PadicElement lq = lambda(q);
    PadicElement oq = exact_int(p, q.valuation());
    PadicElement zero = PadicElement::exact_zero(p);
    PadicElement one = exact_int(p, 1);
    // unknowns (A1, A2, B1, B2); rows:
    //   scaling of v by q shifts a by 1:   A1 lq + A2 oq       = 1
    //   scaling of u by q leaves tau:      A1 lq +       B1 oq = 1   (lambda v part)
    //                                            A2 lq + B2 oq = 0   (ord v part)
    //   selection: A1 = 0 (locally constant a) or A2 = 0 (Schneider type)
    PadicMatrix mat(4, 4, zero);
    PadicMatrix rhs(4, 1, zero);
    mat.at(0, 0) = lq;   mat.at(0, 1) = oq;                       rhs.at(0, 0) = one;
    mat.at(1, 0) = lq;   mat.at(1, 2) = oq;                       rhs.at(1, 0) = one;
    mat.at(2, 1) = lq;   mat.at(2, 3) = oq;
    mat.at(3, schneider ? 1 : 0) = one;
    PadicMatrix sol;
    try {
        sol = mat.solve(rhs);
    } catch (const MathError&) {
        throw ConstraintInconsistent();
    }
    SplittingConstraints cs{sol.at(0, 0), sol.at(1, 0), sol.at(2, 0), sol.at(3, 0)};
    // leftover descent relation b(qv) = b(v) must hold of its own accord
    PadicElement resid = cs.b1 * lq + cs.b2 * oq;
    if (!resid.is_zero_to(std::min(resid.abs_precision(), 10L)))
        throw ConstraintInconsistent();
    return cs;
}

PadicElement eval_constrained_splitting(const BiextPoint& x,
                                        const SplittingConstraints& cs,
                                        const LogBranch& lambda) {
    long p = x.c.prime();
    PadicElement lu = lambda(x.u);
    PadicElement lv = lambda(x.v);
    PadicElement ou = exact_int(p, x.u.valuation());
    PadicElement ov = exact_int(p, x.v.valuation());
    PadicElement a = cs.a1 * lv + cs.a2 * ov;
    PadicElement b = cs.b1 * lv + cs.b2 * ov;
    return lambda(x.c) + a * lu + b * ou;
}

PadicElement unit_root_splitting_tate(const BiextPoint& x, const PadicElement& q,
                                      const LogBranch& lambda, bool schneider) {
    if (x.c.is_zero() || x.u.is_zero() || x.v.is_zero())
        throw DivisionByIndistinguishableZero();
    return eval_constrained_splitting(x, solve_splitting_constraints(q, lambda, schneider),
                                      lambda);
}

PadicElement local_pairing(const DivisorZeroCyclePair& pair, const TateCurve& e,
                           const LogBranch& lambda, const PadicElement& delta,
                           SplittingKind kind) {
    long p = e.p;
    const PadicElement& q = e.q;
    long dsum = 0, zsum = 0;
    for (const auto& w : pair.divisor) dsum += w.weight;
    for (const auto& w : pair.cycle) zsum += w.weight;
    if (dsum != 0 || zsum != 0)
        throw MathError("local_pairing: arguments must have degree zero");

    PadicElement v_d = exact_int(p, 1);
    for (const auto& w : pair.divisor) v_d = v_d * w.u.pow(w.weight);

    SplittingConstraints cs;
    if (kind == SplittingKind::unit_root)
        cs = solve_splitting_constraints(q, lambda, false);

    PadicElement total = PadicElement::zero(p, e.prec);
    for (const auto& a : pair.cycle) {
        PadicElement c = exact_int(p, 1);
        for (const auto& w : pair.divisor) {
            PadicElement ratio = a.u / w.u;
            if ((normalize(ratio, q).u - exact_int(p, 1)).is_zero())
                throw SupportsIntersect();
            c = c * theta_ext(ratio, q, e.prec).pow(w.weight);
        }
        BiextPoint x{c, a.u, v_d};
        PadicElement tau;
        switch (kind) {
            case SplittingKind::mazur_tate: tau = mt_splitting(x, q, lambda); break;
            case SplittingKind::unit_root: tau = eval_constrained_splitting(x, cs, lambda); break;
            case SplittingKind::closed_form: tau = closed_form_oracle(x, q, lambda); break;
        }
        total = total + exact_int(p, a.weight) * tau;
    }
    return delta * total;
}

SplittingReport splitting_comparison_harness(const TateCurve& e,
                                             const LogBranch& lambda,
                                             const PadicElement& delta,
                                             long samples,
                                             unsigned long long seed,
                                             long required_valuation,
                                             bool schneider) {
    long p = e.p;
    const PadicElement& q = e.q;
    long oq = q.valuation();
    long rel = e.prec + 10;
    std::mt19937_64 rng(seed);

    auto runit = [&]() {
        mpz_class u = 0;
        for (long i = 0; i < rel; ++i) u = u * p + static_cast<long>(rng() % p);
        if (u % p == 0) u += 1 + static_cast<long>(rng() % (p - 1));
        return PadicElement::from_unit_part(p, 0, u, rel);
    };
    auto rformal = [&]() {
        mpz_class u = 0;
        for (long i = 0; i < rel - 1; ++i) u = u * p + static_cast<long>(rng() % p);
        return PadicElement::from_unit_part(p, 0, 1 + p * u, rel);
    };

    SplittingReport rep;
    rep.p = p;
    rep.q = q;
    rep.branch_value_at_p = lambda.value_at_p;
    rep.delta = delta;
    rep.seed = seed;
    rep.required_valuation = required_valuation;

    std::vector<BiextPoint> pts;
    // structured points: formal, torsion-over-components, high valuation
    pts.push_back(BiextPoint{rformal(), rformal(), rformal()});
    pts.push_back(BiextPoint{runit(), teichmuller(runit()) * PadicElement::from_int(p, 1, rel),
                             teichmuller(runit())});
    pts.push_back(BiextPoint{runit(), runit() * q.pow(2) * PadicElement::from_int(p, p, rel).pow(oq),
                             runit() * PadicElement::from_int(p, p, rel).pow(5 * oq)});
    while (static_cast<long>(pts.size()) < samples) {
        PadicElement c = runit() * PadicElement::from_int(p, p, rel).pow(
                             static_cast<long>(rng() % 3));
        PadicElement u = runit() * PadicElement::from_int(p, p, rel).pow(
                             static_cast<long>(rng() % (3 * oq + 1)) - oq);
        PadicElement v = runit() * PadicElement::from_int(p, p, rel).pow(
                             static_cast<long>(rng() % (3 * oq + 1)) - oq);
        pts.push_back(BiextPoint{c, u, v});
    }
    if (static_cast<long>(pts.size()) > samples) pts.resize(static_cast<size_t>(samples));

    SplittingConstraints cs = solve_splitting_constraints(q, lambda, schneider);
    long minval = PadicElement::kInfPrec;
    bool pass = true;
    for (const auto& x : pts) {
        SplittingSample s;
        s.c = x.c;
        s.u = x.u;
        s.v = x.v;
        s.tau_mt = delta * mt_splitting(x, q, lambda);
        s.tau_ur = delta * eval_constrained_splitting(x, cs, lambda);
        PadicElement diff = s.tau_mt - s.tau_ur;
        s.diff_valuation = diff.is_zero() ? diff.abs_precision() : diff.valuation();
        minval = std::min(minval, s.diff_valuation);
        if (!diff.is_zero_to(std::min(required_valuation, diff.abs_precision())) ||
            diff.abs_precision() < required_valuation)
            pass = false;
        rep.samples.push_back(std::move(s));
    }
    rep.min_diff_valuation = minval;
    rep.pass = pass;
    return rep;
}

} // namespace padh
