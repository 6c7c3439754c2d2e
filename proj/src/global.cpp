#include "padh/global.hpp"

#include <algorithm>
#include <numeric>

namespace padh {

namespace {

PadicElement exact_int(long p, long n) {
    return PadicElement::from_int(p, n, PadicElement::kInfPrec);
}

long ord_at(const mpz_class& n, long ell) {
    if (n == 0) throw MathError("valuation of zero");
    long v = 0;
    mpz_class m = n;
    while (m % ell == 0) {
        m /= ell;
        ++v;
    }
    return v;
}

long ord_at(const mpq_class& x, long ell) {
    return ord_at(x.get_num(), ell) - ord_at(x.get_den(), ell);
}

} // namespace

RhoFamily RhoFamily::make(long p, const PadicElement& delta, long prec) {
    RhoFamily r;
    r.p = p;
    r.delta = delta;
    r.prec = prec;
    return r;
}

LogBranch RhoFamily::branch() const { return LogBranch::iwasawa(p, prec); }

PadicElement RhoFamily::log_of(const mpq_class& x) const {
    return branch()(PadicElement::from_rational(p, x, prec));
}

PadicElement RhoFamily::at_p(const mpq_class& x) const { return delta * log_of(x); }

PadicElement RhoFamily::at_ell(long ell, const mpq_class& x) const {
    if (ell == p) throw MathError("at_ell: use at_p for the ramified place");
    long v = ord_at(x, ell);
    if (v == 0) return PadicElement::exact_zero(p);
    return -(exact_int(p, v) * delta * log_of(mpq_class(ell)));
}

PadicElement product_formula_check(const mpq_class& alpha, const RhoFamily& rho) {
    if (alpha == 0) throw MathError("product formula: nonzero input required");
    PadicElement total = rho.at_p(alpha);
    auto primes = CurveQ::prime_factors(alpha.get_num() * alpha.get_den());
    for (long ell : primes)
        if (ell != rho.p) total = total + rho.at_ell(ell, alpha);
    return total;
}

namespace {

/// E4 = 1 + 240 sum sigma_3(n) q^n, exact coefficients.
std::vector<mpz_class> eisenstein4(long nterms) {
    std::vector<mpz_class> e(static_cast<size_t>(nterms), 0);
    e[0] = 1;
    for (long d = 1; d < nterms; ++d)
        for (long n = d; n < nterms; n += d)
            e[static_cast<size_t>(n)] += 240 * d * d * d;
    return e;
}

std::vector<mpz_class> zmul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                            long n) {
    std::vector<mpz_class> r(static_cast<size_t>(n), 0);
    for (long i = 0; i < std::min<long>(a.size(), n); ++i)
        for (long j = 0; j < std::min<long>(b.size(), n - i); ++j)
            r[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    return r;
}

/// Delta = q prod (1-q^n)^24, exact coefficients.
std::vector<mpz_class> discriminant_series(long nterms) {
    std::vector<mpz_class> r(static_cast<size_t>(nterms), 0);
    r[0] = 1;
    for (long n = 1; n < nterms; ++n) {
        std::vector<mpz_class> f(static_cast<size_t>(nterms), 0);
        f[0] = 1;
        if (n < nterms) f[static_cast<size_t>(n)] = -1;
        for (int k = 0; k < 24; ++k) r = zmul(r, f, nterms);
    }
    // shift by one power of q
    r.insert(r.begin(), mpz_class(0));
    r.resize(static_cast<size_t>(nterms));
    return r;
}

} // namespace

PadicElement q_from_j(const PadicElement& j, long prec) {
    long p = j.prime();
    if (j.is_zero() || j.valuation() >= 0) throw NotMultiplicative();
    long e = -j.valuation();
    long nterms = prec / e + 10;
    auto e4 = eisenstein4(nterms);
    auto num = zmul(zmul(e4, e4, nterms), e4, nterms); // E4^3
    auto del = discriminant_series(nterms);
    // F(q) = E4^3 - j Delta; root of valuation e
    std::vector<PadicElement> f(static_cast<size_t>(nterms));
    for (long k = 0; k < nterms; ++k)
        f[static_cast<size_t>(k)] =
            PadicElement::from_int(p, num[static_cast<size_t>(k)], PadicElement::kInfPrec) -
            j * PadicElement::from_int(p, del[static_cast<size_t>(k)], PadicElement::kInfPrec);
    auto eval = [&](const PadicElement& q, bool deriv) {
        // Horner on f (or on its term-by-term derivative)
        PadicElement acc = PadicElement::exact_zero(p);
        for (long k = nterms - 1; k >= (deriv ? 1 : 0); --k) {
            PadicElement c = f[static_cast<size_t>(k)];
            if (deriv) c = c * exact_int(p, k);
            if (k > (deriv ? 1 : 0))
                acc = (acc + c) * q;
            else
                acc = acc + c;
        }
        return acc;
    };
    PadicElement q = j.inverse();
    for (int it = 0; it < 80; ++it) {
        PadicElement fq = eval(q, false);
        if (fq.is_zero()) break;
        PadicElement step = fq / eval(q, true);
        q = q - step;
        if (step.is_zero() || step.valuation() > prec + e + 2) break;
    }
    if (q.valuation() != e) throw NotMultiplicative();
    return q.truncated(prec + e);
}

PadicElement q_parameter(const CurveQ& e, long p, long prec) {
    mpq_class jq = e.j();
    if (ord_at(jq, p) >= 0) throw NotMultiplicative();
    return q_from_j(PadicElement::from_rational(p, jq, prec + 2 * (-ord_at(jq, p)) + 4), prec);
}

namespace {

/// Series W with w(t) = t^3 W(t) solving the Weierstrass recursion of the
/// Tate model y^2 + xy = x^3 + a4 x + a6 (x = t/w, y = -1/w).
PSeries tate_w_unit(const TateCurve& tc, long n) {
    long p = tc.p;
    PSeries w; // full w series, length n + 3
    long full = n + 3;
    w.c.assign(static_cast<size_t>(full), PadicElement::exact_zero(p));
    PSeries t3;
    t3.c.assign(static_cast<size_t>(full), PadicElement::exact_zero(p));
    t3.c[3] = exact_int(p, 1);
    PSeries a4s = PSeries::constant(tc.a4(), 1);
    PSeries a6s = PSeries::constant(tc.a6(), 1);
    for (long it = 0; it < full; ++it) {
        PSeries w2 = w.mul(w, full);
        PSeries w3 = w2.mul(w, full);
        PSeries next = t3.add(w.shift(1, full))
                           .add(w2.shift(1, full).scale(tc.a4()))
                           .add(w3.scale(tc.a6()));
        w = next;
    }
    return w.shift(-3, n);
}

PSeries invariant_differential(const TateCurve& tc, long n) {
    // omega = (2V - tV') / (2V - tV) with V = W^{-1}
    PSeries v = tate_w_unit(tc, n + 1).inverse(n + 1);
    PSeries num = v.scale(exact_int(tc.p, 2)).sub(v.derivative().shift(1, n + 1));
    PSeries den = v.scale(exact_int(tc.p, 2)).sub(v.shift(1, n + 1));
    return num.mul(den.inverse(n), n);
}

} // namespace

PSeries formal_log_series(const TateCurve& tc, long nterms) {
    PSeries l = invariant_differential(tc, nterms).integral();
    l.c.resize(static_cast<size_t>(nterms));
    return l;
}

PSeries formal_iso_series(const TateCurve& tc, long nterms) {
    long p = tc.p;
    PSeries om = invariant_differential(tc, nterms);
    PSeries u;
    u.c.assign(static_cast<size_t>(nterms), PadicElement::exact_zero(p));
    u.c[0] = exact_int(p, 1);
    // U' = U * omega, solved coefficient by coefficient
    for (long k = 1; k < nterms; ++k) {
        PadicElement acc = PadicElement::exact_zero(p);
        for (long j = 0; j < k; ++j)
            acc = acc + u.c[static_cast<size_t>(j)] * om.coeff(k - 1 - j);
        u.c[static_cast<size_t>(k)] = acc / exact_int(p, k);
    }
    return u;
}

PadicElement u_from_tate_xy(const PadicElement& x, const PadicElement& y, const PSeries& u_series) {
    PadicElement t = -(x / y);
    if (t.is_zero() || t.valuation() < 1) throw NotInFormalPart();
    return u_series.eval(t);
}

TateModelIso make_tate_iso(const CurveQ& e, long p, long prec) {
    if (p < 5) throw EvenPrimeUnsupported();
    TateModelIso iso;
    iso.curve = e;
    iso.p = p;
    iso.prec = prec;
    long rel = prec + 14;
    iso.tate = TateCurve::make(q_parameter(e, p, rel), rel);
    PadicElement one = exact_int(p, 1);
    PadicElement c4t = one - exact_int(p, 48) * iso.tate.a4();
    PadicElement c6t = -one + exact_int(p, 72) * iso.tate.a4() -
                       exact_int(p, 864) * iso.tate.a6();
    PadicElement c4e = PadicElement::from_rational(p, e.c4(), rel);
    PadicElement c6e = PadicElement::from_rational(p, e.c6(), rel);
    iso.w2 = (c6t * c4e) / (c6e * c4t);
    try {
        iso.w = iso.w2.sqrt();
    } catch (const MathError&) {
        throw NotMultiplicative(); // non-split: the scaling is not a square
    }
    long nterms = rel + 6;
    iso.u_series = formal_iso_series(iso.tate, nterms);
    iso.log_series = formal_log_series(iso.tate, nterms);
    return iso;
}

PadicElement u_parameter(const TateModelIso& iso, const PointQ& pt) {
    long p = iso.p;
    if (pt.inf) return exact_int(p, 1);
    long rel = iso.prec + 14;
    // short model of the rational curve
    mpq_class xs = pt.x + iso.curve.b2() / 12;
    mpq_class ys = pt.y + (iso.curve.a1 * pt.x + iso.curve.a3) / 2;
    xs.canonicalize();
    ys.canonicalize();
    PadicElement xsp = PadicElement::from_rational(p, xs, rel);
    PadicElement ysp = PadicElement::from_rational(p, ys, rel);
    // scale onto the short Tate model, then undo its completion shifts
    PadicElement xt = iso.w2 * xsp;
    PadicElement yt = iso.w2 * iso.w * ysp;
    PadicElement twelfth = PadicElement::from_rational(p, mpq_class(1, 12), PadicElement::kMaxRel);
    PadicElement half = PadicElement::from_rational(p, mpq_class(1, 2), PadicElement::kMaxRel);
    PadicElement X = xt - twelfth;
    PadicElement Y = yt - half * X;
    // model consistency: the image must satisfy the Tate equation
    PadicElement resid = Y * Y + X * Y - X * X * X - iso.tate.a4() * X - iso.tate.a6();
    long tol = std::min(resid.abs_precision(), iso.prec);
    if (!resid.is_zero_to(tol))
        throw MathError("model transport discrepancy: point misses the Tate equation");
    return u_from_tate_xy(X, Y, iso.u_series);
}

long kernel_level(const PointQ& pt, long ell) {
    if (pt.inf) throw MathError("kernel_level of the identity is unbounded");
    long v = ord_at(pt.x.get_den(), ell);
    if (v == 0) return 0;
    if (v % 2 != 0) throw MathError("odd denominator valuation: singular reduction data");
    return v / 2;
}

namespace {

bool kernel_everywhere(const PointQ& pt, const std::vector<long>& primes) {
    for (long ell : primes)
        if (kernel_level(pt, ell) < 1) return false;
    return true;
}

/// First multiplier landing the point in the kernel of reduction at all the
/// given primes.
long kernel_multiplier(const CurveQ& e, const PointQ& pt, const std::vector<long>& primes,
                       long bound) {
    std::vector<long> found(primes.size(), 0);
    PointQ acc = PointQ::infinity();
    for (long k = 1; k <= bound; ++k) {
        acc = e.add(acc, pt);
        if (acc.inf) throw MathError("kernel_multiplier: torsion input");
        bool all = true;
        long lcm = 1;
        for (size_t i = 0; i < primes.size(); ++i) {
            if (!found[i] && kernel_level(acc, primes[i]) >= 1) found[i] = k;
            if (!found[i])
                all = false;
            else
                lcm = std::lcm(lcm, found[i]);
        }
        if (all) return lcm;
    }
    throw SearchBoundExceeded();
}

} // namespace

PadicElement unramified_splitting(const CurveQ& e, long ell, const mpq_class& c,
                                  const PointQ& a, const PointQ& v, const RhoFamily& rho) {
    if (ell == rho.p) throw MathError("unramified_splitting: ell must differ from p");
    if (a.inf || v.inf) throw MathError("unramified_splitting: affine points required");
    long m = kernel_multiplier(e, a, {ell}, 600);
    long n = kernel_multiplier(e, v, {ell}, 600);
    PointQ ma = e.mul(m, a), nv = e.mul(n, v);
    PointQ diff = e.add(ma, e.neg(nv));
    if (diff.inf) throw SupportsIntersect();
    long inter = kernel_level(diff, ell) - kernel_level(ma, ell);
    PadicElement base =
        -(rho.delta * rho.log_of(mpq_class(ell)) * exact_int(rho.p, inter));
    return rho.at_ell(ell, c) + base / exact_int(rho.p, m * n);
}

PairLocalValues pair_divisor_cycle(const std::vector<QWeighted>& divisor,
                                   const std::vector<QWeighted>& cycle,
                                   const RhoFamily& rho, const TateModelIso& iso) {
    long p = rho.p;
    long dsum = 0, zsum = 0;
    for (const auto& d : divisor) dsum += d.weight;
    for (const auto& z : cycle) zsum += z.weight;
    if (dsum != 0 || zsum != 0)
        throw MathError("pair_divisor_cycle: degree-zero arguments required");

    // away-from-p part: intersection levels through x-denominators, folded
    // into a single rational whose Iwasawa log carries sum_l I_l log l
    mpq_class folded = 1;
    for (const auto& z : cycle) {
        if (z.pt.inf) throw MathError("cycle points must be affine");
        for (const auto& d : divisor) {
            PointQ diff = iso.curve.add(z.pt, iso.curve.neg(d.pt));
            if (diff.inf) throw SupportsIntersect();
            mpz_class den = diff.x.get_den();
            long w = z.weight * d.weight;
            mpz_class powed;
            mpz_pow_ui(powed.get_mpz_t(), den.get_mpz_t(),
                       static_cast<unsigned long>(w < 0 ? -w : w));
            if (w >= 0)
                folded *= mpq_class(powed);
            else
                folded /= mpq_class(powed);
        }
    }
    folded.canonicalize();
    PairLocalValues out;
    out.away_part = -(rho.delta * rho.log_of(folded)) /
                    PadicElement::from_int(p, 2, PadicElement::kInfPrec);

    // p-part through the Tate parametrization and the theta machinery
    DivisorZeroCyclePair pr;
    for (const auto& d : divisor) pr.divisor.push_back({d.weight, u_parameter(iso, d.pt)});
    for (const auto& z : cycle) pr.cycle.push_back({z.weight, u_parameter(iso, z.pt)});
    out.p_part = local_pairing(pr, iso.tate, rho.branch(), rho.delta,
                               SplittingKind::mazur_tate);
    out.total = out.p_part + out.away_part;
    return out;
}

GlobalHeightResult global_height(const CurveQ& e, const PointQ& point_p,
                                 const PointQ& point_q, const RhoFamily& rho,
                                 long divisor_shift) {
    if (!e.on_curve(point_p) || !e.on_curve(point_q))
        throw MathError("global_height: points not on the curve");
    if (point_p.inf || point_q.inf) throw MathError("global_height: affine points required");
    long p = rho.p;
    GlobalHeightResult res;

    auto tq = e.torsion_order(point_q);
    auto tp = e.torsion_order(point_p);
    if (tq || tp) {
        // principal-divisor route: k D = div(f_{k,Q}) with D = (Q) - (O)
        const PointQ& q = tq ? point_q : point_p;
        const PointQ& a = tq ? point_p : point_q;
        long k = tq ? *tq : *tp;
        mpq_class alpha;
        bool ok = false;
        for (long s = 2; s <= 8 && !ok; ++s) {
            PointQ S = e.mul(s, a);
            PointQ aS = e.add(a, S);
            if (S.inf || aS.inf || S == q || aS == q) continue;
            try {
                alpha = miller_eval(e, k, q, aS) / miller_eval(e, k, q, S);
                alpha.canonicalize();
                ok = true;
            } catch (const SupportHit&) {
            }
        }
        if (!ok) throw DivisorChoiceUnavailable();
        PadicElement total = rho.at_p(alpha);
        for (long ell : CurveQ::prime_factors(alpha.get_num() * alpha.get_den()))
            if (ell != p) total = total + rho.at_ell(ell, alpha);
        res.total = total / exact_int(p, k);
        res.p_part = rho.at_p(alpha) / exact_int(p, k);
        res.away_part = res.total - res.p_part;
        res.torsion_route = true;
        return res;
    }

    TateModelIso iso = make_tate_iso(e, p, rho.prec);
    std::vector<long> primes = e.bad_primes();
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    res.multiplier_p = kernel_multiplier(e, point_p, primes, 2000);
    res.multiplier_q = kernel_multiplier(e, point_q, primes, 2000);
    PointQ pp = e.mul(res.multiplier_p, point_p);
    PointQ qq = e.mul(res.multiplier_q, point_q);

    std::vector<QWeighted> divisor;
    if (divisor_shift > 0) {
        PointQ r = e.mul(divisor_shift, pp);
        divisor = {{1, e.add(qq, r)}, {-1, r}};
    } else {
        divisor = {{1, qq}, {-1, PointQ::infinity()}};
    }
    for (long k = 2; k <= 6; ++k) {
        PointQ hi = e.mul(k + 1, pp), lo = e.mul(k, pp);
        bool clash = false;
        for (const auto& d : divisor)
            if (d.pt == hi || d.pt == lo) clash = true;
        if (clash) continue;
        std::vector<QWeighted> cycle = {{1, hi}, {-1, lo}};
        auto loc = pair_divisor_cycle(divisor, cycle, rho, iso);
        PadicElement scale = exact_int(p, res.multiplier_p * res.multiplier_q);
        res.total = loc.total / scale;
        res.p_part = loc.p_part / scale;
        res.away_part = loc.away_part / scale;
        return res;
    }
    throw DivisorChoiceUnavailable();
}

} // namespace padh
