#pragma once

#include <vector>

#include "padh/padic.hpp"

namespace padh {

/// Dense truncated power series over the p-adics, coefficient of t^k at c[k].
struct PSeries {
    std::vector<PadicElement> c;

    long len() const { return static_cast<long>(c.size()); }
    static PSeries constant(const PadicElement& a, long n);
    static PSeries variable(long p, long n); // t
    PadicElement coeff(long k) const;

    PSeries add(const PSeries& o) const;
    PSeries sub(const PSeries& o) const;
    PSeries mul(const PSeries& o, long n) const; // truncated to n coefficients
    PSeries scale(const PadicElement& a) const;
    PSeries shift(long k, long n) const; // multiply by t^k
    PSeries derivative() const;
    /// Term-by-term antiderivative with zero constant term.
    PSeries integral() const;
    /// Multiplicative inverse; constant term must be a unit.
    PSeries inverse(long n) const;
    PadicElement eval(const PadicElement& t) const;
};

} // namespace padh
