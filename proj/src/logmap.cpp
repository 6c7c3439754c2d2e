#include "padh/logmap.hpp"

namespace padh {

namespace {
constexpr long kMaxWorkingDigits = 100000;
}

PadicElement teichmuller(const PadicElement& x) {
    if (x.is_zero() || x.valuation() != 0) throw NotAUnit();
    long p = x.prime();
    long rel = x.rel_precision();
    if (rel > kMaxWorkingDigits)
        throw MathError("teichmuller: input must carry capped precision");
    mpz_class mod = p_power(p, rel);
    mpz_class w = x.unit() % mod;
    // x^(p^k) converges to the root of unity; one step per digit suffices.
    for (long k = 0; k < rel; ++k)
        mpz_powm_ui(w.get_mpz_t(), w.get_mpz_t(), static_cast<unsigned long>(p), mod.get_mpz_t());
    return PadicElement::from_unit_part(p, 0, w, rel);
}

PadicElement log_principal_unit(const PadicElement& u) {
    if (u.is_zero() || u.valuation() != 0) throw NotAUnit();
    long p = u.prime();
    long A = u.abs_precision();
    PadicElement z = u - PadicElement::from_int(p, 1, PadicElement::kInfPrec);
    if (z.is_zero()) return PadicElement::zero(p, A);
    long v = z.valuation();
    if (v < 1) throw NotAUnit();
    if (A <= 0) throw PrecisionExhausted("log: no digits available");
    if (A > kMaxWorkingDigits)
        throw MathError("log: input must carry capped precision");

    // exact-integer series evaluation: the derivative of log is a unit, so the
    // value is determined mod p^A despite the divisions by n.
    long nmax = 2;
    while (nmax * v - static_cast<long>(63 - __builtin_clzll(nmax)) < A) ++nmax;
    nmax += 2;
    long guard = 1;
    while (p_power(p, guard) <= nmax) ++guard;
    mpz_class M = p_power(p, A + guard);
    mpz_class Z = z.unit() * p_power(p, v); // canonical integer representative
    mpz_fdiv_r(Z.get_mpz_t(), Z.get_mpz_t(), M.get_mpz_t());
    mpz_class Zpow = 1, sum = 0;
    for (long n = 1; n <= nmax; ++n) {
        Zpow *= Z;
        long e = mpz_ord(mpz_class(n), p);
        mpz_class term = Zpow / p_power(p, e);
        mpz_class ninv, ncop(n / mpz_get_si(p_power(p, e).get_mpz_t()));
        mpz_invert(ninv.get_mpz_t(), ncop.get_mpz_t(), M.get_mpz_t());
        term = term * ninv;
        if (n % 2 == 0) term = -term;
        sum += term;
        mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), M.get_mpz_t());
        mpz_fdiv_r(Zpow.get_mpz_t(), Zpow.get_mpz_t(), M.get_mpz_t());
    }
    mpz_fdiv_r(sum.get_mpz_t(), sum.get_mpz_t(), p_power(p, A).get_mpz_t());
    if (sum == 0) return PadicElement::zero(p, A);
    long sv = mpz_ord(sum, p);
    return PadicElement::from_unit_part(p, sv, sum / p_power(p, sv), A - sv);
}

LogBranch LogBranch::iwasawa(long p, long /*prec*/) {
    return LogBranch{p, PadicElement::exact_zero(p)};
}

LogBranch LogBranch::at_p(const PadicElement& lambda_p) {
    return LogBranch{lambda_p.prime(), lambda_p};
}

PadicElement LogBranch::operator()(const PadicElement& x) const {
    if (x.is_zero()) throw DivisionByIndistinguishableZero();
    long v = x.valuation();
    // exact inputs get a default working precision of 256 digits
    long rel = std::min(x.rel_precision(), 256L);
    PadicElement xu = PadicElement::from_unit_part(p, 0, x.unit() % p_power(p, rel), rel);
    PadicElement w = teichmuller(xu);
    PadicElement principal = xu / w;
    PadicElement logu = log_principal_unit(principal);
    PadicElement vterm = PadicElement::from_int(p, v, PadicElement::kInfPrec) * value_at_p;
    return vterm + logu;
}

} // namespace padh
