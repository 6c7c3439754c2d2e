#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "padh/errors.hpp"

namespace padh {

/// Point on a long Weierstrass model over Q; inf marks the identity.
struct PointQ {
    bool inf = true;
    mpq_class x, y;

    static PointQ infinity() { return PointQ{}; }
    static PointQ affine(const mpq_class& x, const mpq_class& y) { return PointQ{false, x, y}; }
    bool operator==(const PointQ& o) const {
        return inf == o.inf && (inf || (x == o.x && y == o.y));
    }
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
struct CurveQ {
    mpq_class a1, a2, a3, a4, a6;

    mpq_class b2() const;
    mpq_class b4() const;
    mpq_class b6() const;
    mpq_class b8() const;
    mpq_class c4() const;
    mpq_class c6() const;
    mpq_class disc() const;
    mpq_class j() const;

    bool on_curve(const PointQ& pt) const;
    PointQ neg(const PointQ& pt) const;
    PointQ add(const PointQ& a, const PointQ& b) const;
    PointQ mul(long n, const PointQ& pt) const;
    /// Order if pt is torsion of order <= bound, nullopt otherwise.
    std::optional<long> torsion_order(const PointQ& pt, long bound = 16) const;

    /// Distinct prime factors of an integer by trial division; a remaining
    /// cofactor beyond the sieve bound is kept as one pseudo-prime entry.
    static std::vector<long> prime_factors(const mpz_class& n);
    std::vector<long> bad_primes() const;
};

/// Value at z of the line through a and b (tangent when a == b), and of the
/// vertical line through a; building blocks of Miller functions.
mpq_class line_value(const CurveQ& e, const PointQ& a, const PointQ& b, const PointQ& z);
mpq_class vertical_value(const CurveQ& e, const PointQ& a, const PointQ& z);

/// f_{m,P}(z) for the function with divisor m(P) - (mP) - (m-1)(O),
/// by double-and-add. Throws SupportHit when z meets a zero or pole of an
/// intermediate line.
mpq_class miller_eval(const CurveQ& e, long m, const PointQ& p, const PointQ& z);

} // namespace padh
