#include "padh/powerseries.hpp"

namespace padh {

PSeries PSeries::constant(const PadicElement& a, long n) {
    PSeries s;
    s.c.assign(static_cast<size_t>(n), PadicElement::exact_zero(a.prime()));
    if (n > 0) s.c[0] = a;
    return s;
}

PSeries PSeries::variable(long p, long n) {
    PSeries s;
    s.c.assign(static_cast<size_t>(n), PadicElement::exact_zero(p));
    if (n > 1) s.c[1] = PadicElement::from_int(p, 1, PadicElement::kInfPrec);
    return s;
}

PadicElement PSeries::coeff(long k) const {
    if (k < 0 || k >= len()) return PadicElement::exact_zero(c.at(0).prime());
    return c[static_cast<size_t>(k)];
}

PSeries PSeries::add(const PSeries& o) const {
    PSeries r;
    long n = std::max(len(), o.len());
    r.c.reserve(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) r.c.push_back(coeff(k) + o.coeff(k));
    return r;
}

PSeries PSeries::sub(const PSeries& o) const {
    PSeries r;
    long n = std::max(len(), o.len());
    r.c.reserve(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) r.c.push_back(coeff(k) - o.coeff(k));
    return r;
}

PSeries PSeries::mul(const PSeries& o, long n) const {
    long p = c.at(0).prime();
    PSeries r;
    r.c.assign(static_cast<size_t>(n), PadicElement::exact_zero(p));
    for (long i = 0; i < std::min(len(), n); ++i) {
        if (c[static_cast<size_t>(i)].is_zero() &&
            c[static_cast<size_t>(i)].abs_precision() >= PadicElement::kInfPrec / 2)
            continue;
        for (long j = 0; j < std::min(o.len(), n - i); ++j)
            r.c[static_cast<size_t>(i + j)] =
                r.c[static_cast<size_t>(i + j)] + c[static_cast<size_t>(i)] * o.coeff(j);
    }
    return r;
}

PSeries PSeries::scale(const PadicElement& a) const {
    PSeries r = *this;
    for (auto& x : r.c) x = x * a;
    return r;
}

PSeries PSeries::shift(long k, long n) const {
    long p = c.at(0).prime();
    PSeries r;
    r.c.assign(static_cast<size_t>(n), PadicElement::exact_zero(p));
    for (long i = 0; i + k < n && i < len(); ++i)
        if (i + k >= 0) r.c[static_cast<size_t>(i + k)] = coeff(i);
    return r;
}

PSeries PSeries::derivative() const {
    long p = c.at(0).prime();
    PSeries r;
    if (len() <= 1) {
        r.c.assign(1, PadicElement::exact_zero(p));
        return r;
    }
    r.c.reserve(static_cast<size_t>(len() - 1));
    for (long k = 1; k < len(); ++k)
        r.c.push_back(coeff(k) * PadicElement::from_int(p, k, PadicElement::kInfPrec));
    return r;
}

PSeries PSeries::integral() const {
    long p = c.at(0).prime();
    PSeries r;
    r.c.assign(static_cast<size_t>(len() + 1), PadicElement::exact_zero(p));
    for (long k = 0; k < len(); ++k)
        r.c[static_cast<size_t>(k + 1)] =
            coeff(k) / PadicElement::from_int(p, k + 1, PadicElement::kInfPrec);
    return r;
}

PSeries PSeries::inverse(long n) const {
    long p = c.at(0).prime();
    if (c.empty() || c[0].is_zero() || c[0].valuation() != 0)
        throw NotAUnit();
    PSeries r;
    r.c.assign(static_cast<size_t>(n), PadicElement::exact_zero(p));
    PadicElement inv0 = c[0].inverse();
    r.c[0] = inv0;
    for (long k = 1; k < n; ++k) {
        PadicElement acc = PadicElement::exact_zero(p);
        for (long j = 1; j <= std::min(k, len() - 1); ++j)
            acc = acc + coeff(j) * r.c[static_cast<size_t>(k - j)];
        r.c[static_cast<size_t>(k)] = -(inv0 * acc);
    }
    return r;
}

PadicElement PSeries::eval(const PadicElement& t) const {
    long p = c.at(0).prime();
    PadicElement acc = PadicElement::exact_zero(p);
    for (long k = len() - 1; k >= 0; --k) acc = acc * t + coeff(k);
    return acc;
}

} // namespace padh
