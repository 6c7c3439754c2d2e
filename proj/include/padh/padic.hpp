#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

#include "padh/errors.hpp"

namespace padh {

/// p^e as an mpz.
mpz_class p_power(long p, long e);

/// p-adic valuation of a nonzero integer.
long mpz_ord(const mpz_class& n, long p);

/// Element of Q_p with explicit precision: p^v * u + O(p^abs), u a unit
/// residue mod p^(abs-v).  A value indistinguishable from zero carries only
/// its absolute precision.
class PadicElement {
public:
    PadicElement() = default;

    static PadicElement zero(long p, long abs_prec);
    static PadicElement exact_zero(long p);
    static PadicElement from_int(long p, const mpz_class& n, long rel_prec);
    static PadicElement from_rational(long p, const mpq_class& r, long rel_prec);
    /// p^val * unit with unit taken mod p^rel_prec; unit must be prime to p.
    static PadicElement from_unit_part(long p, long val, const mpz_class& unit, long rel_prec);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_unit() const { return !zero_ && val_ == 0; }
    /// For zero this is the guaranteed lower bound abs_precision.
    long valuation() const { return zero_ ? abs_ : val_; }
    long abs_precision() const { return abs_; }
    long rel_precision() const { return zero_ ? 0 : abs_ - val_; }
    const mpz_class& unit() const { return unit_; }

    /// Canonical representative p^v * u as a rational.
    mpq_class lift_rational() const;

    PadicElement operator-() const;
    PadicElement operator+(const PadicElement& o) const;
    PadicElement operator-(const PadicElement& o) const;
    PadicElement operator*(const PadicElement& o) const;
    PadicElement operator/(const PadicElement& o) const;

    PadicElement inverse() const;
    PadicElement pow(long n) const;
    /// Square root by Hensel lifting (p odd); valuation must be even and the
    /// unit a quadratic residue.
    PadicElement sqrt() const;
    /// Multiply by p^k (exact shift).
    PadicElement shift(long k) const;

    /// Reduce to absolute precision a (a <= current abs_precision allowed only).
    PadicElement truncated(long abs_prec) const;

    /// True if the value is guaranteed divisible by p^k.
    bool is_zero_to(long k) const { return zero_ ? abs_ >= k : val_ >= k; }
    /// a == b mod p^k, both known to at least that precision.
    static bool agree(const PadicElement& a, const PadicElement& b, long k);

    std::string token() const;
    static PadicElement parse_token(const std::string& s);

    /// Base-p little-endian digits of the unit residue (length rel_precision).
    std::vector<long> unit_digits() const;
    static PadicElement from_digits(long p, long valuation, const std::vector<long>& digits,
                                    long abs_prec);

    static constexpr long kInfPrec = 1000000000L;
    /// Nonzero values never carry more than this many digits; passing kInfPrec
    /// as a relative precision means "effectively exact" (this cap).
    static constexpr long kMaxRel = 512L;

private:
    void canonicalize();

    long p_ = 0;
    long val_ = 0;   // valuation (nonzero values only)
    long abs_ = 0;   // absolute precision
    mpz_class unit_ = 0;
    bool zero_ = true;
};

} // namespace padh
