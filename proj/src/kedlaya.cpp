#include "padh/kedlaya.hpp"

#include <vector>

namespace padh {

namespace {

using QPoly = std::vector<mpq_class>; // lowest degree first

long qdeg(const QPoly& a) {
    long d = static_cast<long>(a.size()) - 1;
    while (d >= 0 && a[static_cast<size_t>(d)] == 0) --d;
    return d;
}

void qtrim(QPoly& a) { a.resize(static_cast<size_t>(qdeg(a) + 1)); }

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qtrim(r);
    return r;
}

QPoly qadd(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    if (r.size() < b.size()) r.resize(b.size(), mpq_class(0));
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    qtrim(r);
    return r;
}

QPoly qscale(const QPoly& a, const mpq_class& s) {
    QPoly r = a;
    for (auto& c : r) c *= s;
    return r;
}

QPoly qderiv(const QPoly& a) {
    QPoly r;
    for (size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<long>(i));
    return r;
}

// divide by monic divisor: a = q * d + r
void qdivmod(const QPoly& a, const QPoly& d, QPoly& q, QPoly& r) {
    r = a;
    qtrim(r);
    long dd = qdeg(d);
    q.assign(1, mpq_class(0));
    long da = qdeg(r);
    if (da >= dd) q.assign(static_cast<size_t>(da - dd + 1), mpq_class(0));
    while ((da = qdeg(r)) >= dd) {
        mpq_class c = r[static_cast<size_t>(da)] / d[static_cast<size_t>(dd)];
        q[static_cast<size_t>(da - dd)] = c;
        for (long i = 0; i <= dd; ++i)
            r[static_cast<size_t>(da - dd + i)] -= c * d[static_cast<size_t>(i)];
        r[static_cast<size_t>(da)] = 0;
    }
    qtrim(q);
    qtrim(r);
}

// extended euclid for coprime monic f and f': u*f + v*df = 1
void qbezout(const QPoly& f, const QPoly& df, QPoly& u, QPoly& v) {
    QPoly r0 = f, r1 = df;
    QPoly s0{mpq_class(1)}, s1{mpq_class(0)};
    QPoly t0{mpq_class(0)}, t1{mpq_class(1)};
    while (qdeg(r1) >= 0) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly ns = qadd(s0, qscale(qmul(q, s1), mpq_class(-1)));
        QPoly nt = qadd(t0, qscale(qmul(q, t1), mpq_class(-1)));
        r0 = r1; r1 = r;
        s0 = s1; s1 = ns;
        t0 = t1; t1 = nt;
    }
    if (qdeg(r0) != 0) throw BadReduction();
    mpq_class lead = r0[0];
    u = qscale(s0, 1 / lead);
    v = qscale(t0, 1 / lead);
}

PadicElement q_to_padic(const mpq_class& r, long p, long rel) {
    return PadicElement::from_rational(p, r, rel);
}

} // namespace

long count_points_naive(const GoodCurve& c) {
    long p = c.p;
    std::vector<int> is_square(static_cast<size_t>(p), 0);
    for (long t = 0; t < p; ++t) is_square[static_cast<size_t>((t * t) % p)] = 1;
    long am = ((c.a % p) + p) % p == 0 ? 0 : mpz_class(((c.a % p) + p) % p).get_si();
    long bm = mpz_class(((c.b % p) + p) % p).get_si();
    long count = 1; // point at infinity
    for (long x = 0; x < p; ++x) {
        long fx = (x * x % p * x % p + am * x % p + bm) % p;
        if (fx == 0)
            count += 1;
        else
            count += is_square[static_cast<size_t>(fx)] ? 2 : 0;
    }
    return p + 1 - count;
}

FrobResult frobenius_matrix(const GoodCurve& c, long prec) {
    long p = c.p;
    if (p < 5) throw EvenPrimeUnsupported();
    // good reduction check: discriminant of x^3+ax+b prime to p
    mpz_class disc = -4 * c.a * c.a * c.a - 27 * c.b * c.b;
    if (disc % p == 0) throw BadReduction();

    QPoly f{mpq_class(c.b), mpq_class(c.a), mpq_class(0), mpq_class(1)};
    QPoly df = qderiv(f);
    QPoly u0, v0;
    qbezout(f, df, u0, v0);

    // series truncation: term k carries p-valuation >= k+1; reduction divisions
    // can strip at most log_p of the product of odd levels passed through
    long K = prec + 6;
    {
        long loss = 0, m = (p - 1) / 2 + p * K;
        while (m > 0) { loss += 2; m /= p; }
        K += loss / 2;
    }

    // D = f(x^p) - f(x)^p, divisible by p
    QPoly fp{mpq_class(1)};
    for (long i = 0; i < p; ++i) fp = qmul(fp, f);
    QPoly fxp(static_cast<size_t>(3 * p + 1), mpq_class(0));
    fxp[0] += mpq_class(c.b);
    fxp[static_cast<size_t>(p)] += mpq_class(c.a);
    fxp[static_cast<size_t>(3 * p)] += 1;
    QPoly D = qadd(fxp, qscale(fp, mpq_class(-1)));

    // c_k = (-1)^k binom(2k,k)/4^k, the coefficients of (1+T)^{-1/2}
    std::vector<mpq_class> ck(static_cast<size_t>(K + 1));
    ck[0] = 1;
    for (long k = 1; k <= K; ++k)
        ck[static_cast<size_t>(k)] =
            ck[static_cast<size_t>(k - 1)] * mpq_class(-(2 * k - 1), 2 * k);

    // powers of D up to K
    std::vector<QPoly> Dpow(static_cast<size_t>(K + 1));
    Dpow[0] = QPoly{mpq_class(1)};
    for (long k = 1; k <= K; ++k) Dpow[static_cast<size_t>(k)] = qmul(Dpow[static_cast<size_t>(k - 1)], D);

    FrobResult out;
    out.matrix = PadicMatrix::zero_matrix(2, 2, p, prec);
    for (long i = 0; i <= 1; ++i) {
        // phi(x^i dx/y) = sum_k p c_k x^{pi+p-1} D^k dx / y^{2 m_k + 1},
        // m_k = (p-1)/2 + pk; descend one level at a time, absorbing each
        // incoming term at its own level
        long m_top = (p - 1) / 2 + p * K;
        QPoly acc; // numerator at current level m
        for (long m = m_top; m >= 1; --m) {
            if ((m - (p - 1) / 2) % p == 0 && m >= (p - 1) / 2) {
                long k = (m - (p - 1) / 2) / p;
                if (k >= 0 && k <= K) {
                    QPoly term(static_cast<size_t>(p * i + p - 1 + 1), mpq_class(0));
                    term[static_cast<size_t>(p * i + p - 1)] =
                        mpq_class(p) * ck[static_cast<size_t>(k)];
                    acc = qadd(acc, qmul(term, Dpow[static_cast<size_t>(k)]));
                }
            }
            if (qdeg(acc) < 0) continue;
            // acc dx/y^{2m+1} == (U + 2 V' / (2m-1)) dx/y^{2m-1},
            // where acc = U f + V f'
            QPoly v = qmul(v0, acc);
            QPoly dummyq, vr;
            qdivmod(v, f, dummyq, vr); // V = v0*acc mod f
            QPoly uf = qadd(acc, qscale(qmul(vr, df), mpq_class(-1)));
            QPoly U, rem;
            qdivmod(uf, f, U, rem);
            if (qdeg(rem) >= 0) throw MathError("cohomology reduction: nonzero remainder");
            acc = qadd(U, qscale(qderiv(vr), mpq_class(2, 2 * m - 1)));
        }
        // absorb the k = 0 ... level-0 case cannot occur since m_k >= (p-1)/2 >= 2
        // degree reduction at the y^1 level using d(x^{s-2} y)
        while (qdeg(acc) >= 2) {
            long s = qdeg(acc);
            mpq_class lead = acc[static_cast<size_t>(s)];
            // R = (s-2) x^{s-3} f + (1/2) x^{s-2} f', leading term (s - 1/2) x^s
            QPoly R;
            if (s >= 3) {
                QPoly xs3(static_cast<size_t>(s - 3 + 1), mpq_class(0));
                xs3[static_cast<size_t>(s - 3)] = mpq_class(s - 2);
                R = qmul(xs3, f);
            }
            QPoly xs2(static_cast<size_t>(s - 2 + 1), mpq_class(0));
            xs2[static_cast<size_t>(s - 2)] = mpq_class(1, 2);
            R = qadd(R, qmul(xs2, df));
            mpq_class factor = lead / mpq_class(2 * s - 1, 2);
            acc = qadd(acc, qscale(R, -factor));
            if (qdeg(acc) >= s) throw MathError("degree reduction failed to cancel");
        }
        acc.resize(2, mpq_class(0));
        out.matrix.at(0, i) = q_to_padic(acc[0], p, prec);
        out.matrix.at(1, i) = q_to_padic(acc[1], p, prec);
    }

    out.charpoly = charpoly(out.matrix);
    // recover the integer trace (|a_p| <= 2 sqrt p)
    PadicElement tr = out.matrix.at(0, 0) + out.matrix.at(1, 1);
    long bound = 2;
    while (bound * bound <= 4 * p) ++bound;
    long ap = 0;
    bool found = false;
    for (long t = -bound; t <= bound; ++t) {
        if ((tr - PadicElement::from_int(p, t, prec)).is_zero_to(prec - 1)) {
            ap = t;
            found = true;
            break;
        }
    }
    if (!found) throw PrecisionExhausted("trace is not a small integer");
    out.a_p = ap;
    return out;
}

} // namespace padh
