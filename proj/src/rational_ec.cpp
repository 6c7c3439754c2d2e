#include "padh/rational_ec.hpp"

#include <algorithm>

namespace padh {

mpq_class CurveQ::b2() const { return a1 * a1 + 4 * a2; }
mpq_class CurveQ::b4() const { return 2 * a4 + a1 * a3; }
mpq_class CurveQ::b6() const { return a3 * a3 + 4 * a6; }
mpq_class CurveQ::b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
}
mpq_class CurveQ::c4() const { return b2() * b2() - 24 * b4(); }
mpq_class CurveQ::c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
mpq_class CurveQ::disc() const {
    mpq_class B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
}
mpq_class CurveQ::j() const { return c4() * c4() * c4() / disc(); }

bool CurveQ::on_curve(const PointQ& pt) const {
    if (pt.inf) return true;
    const mpq_class &x = pt.x, &y = pt.y;
    return y * y + a1 * x * y + a3 * y == x * x * x + a2 * x * x + a4 * x + a6;
}

PointQ CurveQ::neg(const PointQ& pt) const {
    if (pt.inf) return pt;
    return PointQ::affine(pt.x, -pt.y - a1 * pt.x - a3);
}

PointQ CurveQ::add(const PointQ& a, const PointQ& b) const {
    if (a.inf) return b;
    if (b.inf) return a;
    if (a.x == b.x && a.y != b.y) return PointQ::infinity();
    mpq_class lam, nu;
    if (a.x != b.x) {
        lam = (b.y - a.y) / (b.x - a.x);
        nu = a.y - lam * a.x;
    } else {
        mpq_class den = 2 * a.y + a1 * a.x + a3;
        if (den == 0) return PointQ::infinity(); // 2-torsion
        lam = (3 * a.x * a.x + 2 * a2 * a.x + a4 - a1 * a.y) / den;
        nu = a.y - lam * a.x;
    }
    mpq_class x3 = lam * lam + a1 * lam - a2 - a.x - b.x;
    mpq_class y3 = -(lam + a1) * x3 - nu - a3;
    x3.canonicalize();
    y3.canonicalize();
    return PointQ::affine(x3, y3);
}

PointQ CurveQ::mul(long n, const PointQ& pt) const {
    if (n < 0) return mul(-n, neg(pt));
    PointQ acc = PointQ::infinity();
    PointQ base = pt;
    for (unsigned long e = static_cast<unsigned long>(n); e; e >>= 1) {
        if (e & 1) acc = add(acc, base);
        base = add(base, base);
    }
    return acc;
}

std::optional<long> CurveQ::torsion_order(const PointQ& pt, long bound) const {
    PointQ acc = PointQ::infinity();
    for (long k = 1; k <= bound; ++k) {
        acc = add(acc, pt);
        if (acc.inf) return k;
    }
    return std::nullopt;
}

std::vector<long> CurveQ::prime_factors(const mpz_class& n) {
    std::vector<long> out;
    mpz_class m = abs(n);
    if (m <= 1) return out;
    for (long d = 2; d <= 1000000 && m > 1; d += (d == 2 ? 1 : 2)) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) {
        if (!m.fits_slong_p()) throw MathError("prime factor beyond supported range");
        out.push_back(m.get_si());
    }
    return out;
}

std::vector<long> CurveQ::bad_primes() const {
    mpq_class d = disc();
    auto num = prime_factors(d.get_num());
    auto den = prime_factors(d.get_den());
    num.insert(num.end(), den.begin(), den.end());
    std::sort(num.begin(), num.end());
    num.erase(std::unique(num.begin(), num.end()), num.end());
    return num;
}

namespace {

using QPolyX = std::vector<mpq_class>; // coefficients in x, lowest first

QPolyX px_add(const QPolyX& a, const QPolyX& b) {
    QPolyX r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

QPolyX px_mul(const QPolyX& a, const QPolyX& b) {
    if (a.empty() || b.empty()) return {};
    QPolyX r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

QPolyX px_scale(const QPolyX& a, const mpq_class& c) {
    if (c == 0) return {};
    QPolyX r = a;
    for (auto& v : r) v *= c;
    return r;
}

mpq_class px_eval(const QPolyX& a, const mpq_class& x) {
    mpq_class acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    acc.canonicalize();
    return acc;
}

/// Element A(x) + B(x) y of the function field of the curve.
struct FF {
    QPolyX a, b;
};

/// Multiply with reduction by y^2 = x^3 + a2 x^2 + a4 x + a6 - a1 xy - a3 y.
FF ff_mul(const CurveQ& e, const FF& f, const FF& g) {
    QPolyX y2x = {e.a6, e.a4, e.a2, mpq_class(1)}; // cubic part of y^2
    QPolyX y1x = {-e.a3, -e.a1};                   // y-coefficient of y^2
    QPolyX bb = px_mul(f.b, g.b);
    FF r;
    r.a = px_add(px_mul(f.a, g.a), px_mul(bb, y2x));
    r.b = px_add(px_add(px_mul(f.a, g.b), px_mul(f.b, g.a)), px_mul(bb, y1x));
    return r;
}

/// y-conjugate: y -> -y - a1 x - a3.
FF ff_conj(const CurveQ& e, const FF& f) {
    FF r;
    r.a = px_add(f.a, px_mul(f.b, QPolyX{-e.a3, -e.a1}));
    r.b = px_scale(f.b, mpq_class(-1));
    return r;
}

mpq_class ff_eval(const FF& f, const PointQ& z) {
    return px_eval(f.a, z.x) + px_eval(f.b, z.x) * z.y;
}

/// Numerator/denominator pair of function-field elements.
struct FFQuot {
    FF num{{mpq_class(1)}, {}};
    FF den{{mpq_class(1)}, {}};
};

FF line_function(const CurveQ& e, const PointQ& a, const PointQ& b) {
    // straight line through a and b (tangent if equal); both affine
    if (a.x == b.x && !(a == b)) return FF{{-a.x, mpq_class(1)}, {}};
    if (a == b && (2 * a.y + e.a1 * a.x + e.a3) == 0) return FF{{-a.x, mpq_class(1)}, {}};
    mpq_class lam;
    if (a.x != b.x)
        lam = (b.y - a.y) / (b.x - a.x);
    else
        lam = (3 * a.x * a.x + 2 * e.a2 * a.x + e.a4 - e.a1 * a.y) /
              (2 * a.y + e.a1 * a.x + e.a3);
    lam.canonicalize();
    mpq_class nu = a.y - lam * a.x;
    nu.canonicalize();
    return FF{{-nu, -lam}, {mpq_class(1)}}; // y - lam x - nu
}

FF chord_or_vertical(const CurveQ& e, const PointQ& a, const PointQ& b, bool* vertical) {
    if (a.inf && b.inf) {
        *vertical = true;
        return FF{{mpq_class(1)}, {}};
    }
    if (a.inf) {
        *vertical = true;
        return FF{{-b.x, mpq_class(1)}, {}};
    }
    if (b.inf) {
        *vertical = true;
        return FF{{-a.x, mpq_class(1)}, {}};
    }
    FF l = line_function(e, a, b);
    *vertical = l.b.empty();
    return l;
}

} // namespace

mpq_class line_value(const CurveQ& e, const PointQ& a, const PointQ& b, const PointQ& z) {
    if (z.inf) throw SupportHit();
    bool vertical = false;
    FF l = chord_or_vertical(e, a, b, &vertical);
    mpq_class v = ff_eval(l, z);
    v.canonicalize();
    if (v == 0) throw SupportHit();
    return v;
}

mpq_class vertical_value(const CurveQ& e, const PointQ& a, const PointQ& z) {
    (void)e;
    if (z.inf) throw SupportHit();
    if (a.inf) return 1;
    mpq_class v = z.x - a.x;
    v.canonicalize();
    if (v == 0) throw SupportHit();
    return v;
}

namespace {

/// Exact division by (x - r); returns false when the remainder is nonzero.
bool px_divide_linear(QPolyX& a, const mpq_class& r) {
    if (a.empty()) return true;
    QPolyX q(a.size() - 1, mpq_class(0));
    mpq_class carry = 0;
    for (size_t i = a.size(); i-- > 1;) {
        carry = a[i] + carry * r;
        carry.canonicalize();
        q[i - 1] = carry;
    }
    carry = a[0] + carry * r;
    carry.canonicalize();
    if (carry != 0) return false;
    a = q;
    return true;
}

long px_strip_linear(QPolyX& a, const mpq_class& r) {
    long k = 0;
    while (!a.empty()) {
        QPolyX save = a;
        if (!px_divide_linear(a, r)) {
            a = save;
            break;
        }
        ++k;
    }
    return k;
}

} // namespace

mpq_class miller_eval(const CurveQ& e, long m, const PointQ& p, const PointQ& z) {
    if (m < 1) throw MathError("miller_eval: multiplier must be positive");
    if (z.inf) throw SupportHit();
    if (p.inf || m == 1) return 1;
    long msb = 63;
    while (msb > 0 && !((static_cast<unsigned long>(m) >> msb) & 1)) --msb;
    // f_{m,P} held symbolically as (A(x) + B(x) y) / C(x) so zeros shared by
    // intermediate lines and verticals cancel algebraically
    FF num{{mpq_class(1)}, {}};
    QPolyX den{mpq_class(1)};
    PointQ t = p;
    bool vert = false;
    for (long i = msb - 1; i >= 0; --i) {
        PointQ t2 = e.add(t, t);
        num = ff_mul(e, num, num);
        den = px_mul(den, den);
        num = ff_mul(e, num, chord_or_vertical(e, t, t, &vert));
        if (!t2.inf) den = px_mul(den, QPolyX{-t2.x, mpq_class(1)});
        t = t2;
        if ((static_cast<unsigned long>(m) >> i) & 1) {
            PointQ tp = e.add(t, p);
            num = ff_mul(e, num, chord_or_vertical(e, t, p, &vert));
            if (!tp.inf) den = px_mul(den, QPolyX{-tp.x, mpq_class(1)});
            t = tp;
        }
    }
    // cancel powers of (x - x(z)) shared by numerator and denominator: the
    // numerator is divisible whenever it vanishes at both points above x(z)
    QPolyX c1 = den;
    long k = px_strip_linear(c1, z.x);
    while (k > 0) {
        QPolyX a = num.a, b = num.b;
        if (!px_divide_linear(a, z.x) || !px_divide_linear(b, z.x)) break;
        num.a = a;
        num.b = b;
        --k;
    }
    if (k == 0) {
        mpq_class dv = px_eval(c1, z.x);
        mpq_class nv = ff_eval(num, z);
        nv.canonicalize();
        if (nv == 0) throw SupportHit();
        mpq_class r = nv / dv;
        r.canonicalize();
        return r;
    }
    // residual 0/0 with the numerator vanishing at z only: pass to the
    // conjugate norm, a pure polynomial in x, and cancel the factor exactly
    FF cj = ff_conj(e, num);
    FF prod = ff_mul(e, num, cj);
    if (!prod.b.empty()) throw MathError("miller_eval: norm is not Galois-stable");
    QPolyX bign = prod.a;
    long j = px_strip_linear(bign, z.x);
    if (j != k) throw SupportHit(); // genuine zero or pole at z
    mpq_class cjv = ff_eval(cj, z);
    cjv.canonicalize();
    if (cjv == 0) throw DivisorChoiceUnavailable(); // ramified: retry elsewhere
    mpq_class r = px_eval(bign, z.x) / (px_eval(c1, z.x) * cjv);
    r.canonicalize();
    if (r == 0) throw SupportHit();
    return r;
}

} // namespace padh
