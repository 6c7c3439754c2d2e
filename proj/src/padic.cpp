#include "padh/padic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace padh {

mpz_class p_power(long p, long e) {
    if (e < 0) throw MathError("p_power: negative exponent");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

long mpz_ord(const mpz_class& n, long p) {
    if (n == 0) throw MathError("mpz_ord of zero");
    mpz_class m = n, q, r;
    long v = 0;
    while (true) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

namespace {
long clamp_prec(long a) {
    return std::min(a, PadicElement::kInfPrec);
}
} // namespace

PadicElement PadicElement::zero(long p, long abs_prec) {
    PadicElement e;
    e.p_ = p;
    e.zero_ = true;
    e.abs_ = clamp_prec(abs_prec);
    return e;
}

PadicElement PadicElement::exact_zero(long p) {
    return zero(p, kInfPrec);
}

void PadicElement::canonicalize() {
    // nonzero inputs: unit_ arbitrary integer; val_, abs_ set.  Extract p-powers
    // and reduce the unit mod p^(abs_-val_); collapse to zero when no digits remain.
    if (zero_) return;
    if (unit_ == 0) {
        zero_ = true;
        unit_ = 0;
        return;
    }
    long t = mpz_ord(unit_, p_);
    if (t > 0) {
        mpz_class pw = p_power(p_, t);
        unit_ /= pw;
        val_ += t;
    }
    if (val_ >= abs_) {
        zero_ = true;
        unit_ = 0;
        return;
    }
    mpz_class mod = p_power(p_, abs_ - val_);
    mpz_fdiv_r(unit_.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t());
    if (unit_ == 0) {
        // can only happen if unit_ was a multiple of the modulus times a p-power
        zero_ = true;
        return;
    }
}

PadicElement PadicElement::from_unit_part(long p, long val, const mpz_class& unit, long rel_prec) {
    rel_prec = std::min(rel_prec, kMaxRel);
    if (rel_prec <= 0) return zero(p, val);
    PadicElement e;
    e.p_ = p;
    e.zero_ = false;
    e.val_ = val;
    e.abs_ = clamp_prec(val + rel_prec);
    e.unit_ = unit;
    e.canonicalize();
    return e;
}

PadicElement PadicElement::from_int(long p, const mpz_class& n, long rel_prec) {
    if (n == 0) return exact_zero(p);
    long v = mpz_ord(n, p);
    return from_unit_part(p, v, n / p_power(p, v), rel_prec);
}

PadicElement PadicElement::from_rational(long p, const mpq_class& r, long rel_prec) {
    if (r == 0) return exact_zero(p);
    rel_prec = std::min(rel_prec, kMaxRel);
    mpz_class num = r.get_num(), den = r.get_den();
    long vn = mpz_ord(num, p), vd = mpz_ord(den, p);
    num /= p_power(p, vn);
    den /= p_power(p, vd);
    mpz_class mod = p_power(p, rel_prec);
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw MathError("from_rational: denominator not invertible");
    return from_unit_part(p, vn - vd, num * deninv, rel_prec);
}

mpq_class PadicElement::lift_rational() const {
    if (zero_) return mpq_class(0);
    mpq_class u(unit_);
    if (val_ >= 0) return u * mpq_class(p_power(p_, val_));
    return u / mpq_class(p_power(p_, -val_));
}

PadicElement PadicElement::operator-() const {
    if (zero_) return *this;
    PadicElement e = *this;
    e.unit_ = p_power(p_, abs_ - val_) - unit_;
    e.canonicalize();
    return e;
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
    if (p_ != o.p_ && p_ != 0 && o.p_ != 0) throw MathError("mixed primes");
    long p = p_ ? p_ : o.p_;
    if (zero_ && o.zero_) return zero(p, std::min(abs_, o.abs_));
    if (zero_) {
        PadicElement r = o;
        r.abs_ = std::min(abs_, o.abs_);
        if (r.val_ >= r.abs_) return zero(p, r.abs_);
        r.canonicalize();
        return r;
    }
    if (o.zero_) return o + *this;
    long v = std::min(val_, o.val_);
    long A = std::min(abs_, o.abs_);
    if (A <= v) return zero(p, A);
    mpz_class mod = p_power(p, A - v);
    mpz_class s = unit_ * p_power(p, val_ - v) + o.unit_ * p_power(p, o.val_ - v);
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    PadicElement r;
    r.p_ = p;
    r.zero_ = false;
    r.val_ = v;
    r.abs_ = A;
    r.unit_ = s;
    r.canonicalize();
    return r;
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
    if (p_ != o.p_ && p_ != 0 && o.p_ != 0) throw MathError("mixed primes");
    long p = p_ ? p_ : o.p_;
    if (zero_ || o.zero_) {
        // abs(zero * x) = abs(zero) + val(x); both zero: sum of bounds.
        long a = clamp_prec(std::min<long long>(
            static_cast<long long>(zero_ ? abs_ : val_) + (o.zero_ ? o.abs_ : o.val_),
            kInfPrec));
        return zero(p, a);
    }
    long rel = std::min(abs_ - val_, o.abs_ - o.val_);
    PadicElement r;
    r.p_ = p;
    r.zero_ = false;
    r.val_ = val_ + o.val_;
    r.abs_ = clamp_prec(r.val_ + rel);
    r.unit_ = unit_ * o.unit_;
    r.canonicalize();
    return r;
}

PadicElement PadicElement::inverse() const {
    if (zero_) throw DivisionByIndistinguishableZero();
    long rel = abs_ - val_;
    mpz_class mod = p_power(p_, rel);
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw MathError("inverse: unit not invertible");
    return from_unit_part(p_, -val_, inv, rel);
}

PadicElement PadicElement::operator/(const PadicElement& o) const {
    if (o.zero_) throw DivisionByIndistinguishableZero();
    if (zero_) return zero(p_ ? p_ : o.p_, clamp_prec(abs_ - o.val_));
    return *this * o.inverse();
}

PadicElement PadicElement::pow(long n) const {
    long p = p_;
    if (n == 0) {
        if (zero_ && abs_ <= 0) throw PrecisionExhausted("0^0 with nonpositive precision");
        return from_int(p, 1, zero_ ? kInfPrec : abs_ - val_);
    }
    PadicElement base = n < 0 ? inverse() : *this;
    unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
    if (base.zero_) {
        long a = clamp_prec(static_cast<long>(std::min<long long>(
            static_cast<long long>(base.abs_) * static_cast<long long>(e), kInfPrec)));
        return zero(p, a);
    }
    long rel = base.abs_ - base.val_;
    mpz_class mod = p_power(p, rel);
    mpz_class u;
    mpz_powm_ui(u.get_mpz_t(), base.unit_.get_mpz_t(), e, mod.get_mpz_t());
    return from_unit_part(p, base.val_ * static_cast<long>(e), u, rel);
}

PadicElement PadicElement::sqrt() const {
    if (zero_) {
        if (abs_ >= kInfPrec) return *this;
        return zero(p_, (abs_ + 1) / 2);
    }
    if (p_ == 2) throw MathError("sqrt: p = 2 unsupported");
    if (val_ % 2 != 0) throw MathError("sqrt: odd valuation");
    long rel = abs_ - val_;
    mpz_class mod = p_power(p_, rel);
    // find a mod-p square root of the unit by enumeration (primes here are small)
    mpz_class u0 = unit_ % p_;
    long r0 = -1;
    for (long r = 1; r < p_; ++r) {
        if ((r * r) % p_ == mpz_get_si(u0.get_mpz_t())) { r0 = r; break; }
    }
    if (r0 < 0) throw MathError("sqrt: unit is not a quadratic residue");
    mpz_class r(r0), inv2;
    mpz_class two(2);
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), mod.get_mpz_t());
    for (long k = 1; k < rel; k *= 2) {
        // Newton: r <- (r + u/r)/2
        mpz_class rinv;
        mpz_invert(rinv.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
        r = ((r + unit_ * rinv) * inv2) % mod;
    }
    return from_unit_part(p_, val_ / 2, r, rel);
}

PadicElement PadicElement::shift(long k) const {
    PadicElement r = *this;
    if (r.zero_) {
        r.abs_ = clamp_prec(r.abs_ + k);
    } else {
        r.val_ += k;
        r.abs_ = clamp_prec(r.abs_ + k);
    }
    return r;
}

PadicElement PadicElement::truncated(long abs_prec) const {
    if (abs_prec >= abs_) return *this;
    if (zero_ || val_ >= abs_prec) return zero(p_, abs_prec);
    PadicElement r = *this;
    r.abs_ = abs_prec;
    r.canonicalize();
    return r;
}

bool PadicElement::agree(const PadicElement& a, const PadicElement& b, long k) {
    if (a.abs_precision() < k || b.abs_precision() < k)
        throw PrecisionExhausted("agreement check beyond known digits");
    return (a - b).is_zero_to(k);
}

std::string PadicElement::token() const {
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^" << abs_ << ")";
    } else {
        os << p_ << "^" << val_ << " * " << unit_.get_str() << " mod " << p_ << "^"
           << (abs_ - val_);
    }
    return os.str();
}

PadicElement PadicElement::parse_token(const std::string& s) {
    if (s.rfind("O(", 0) == 0) {
        // O(p^N)
        auto caret = s.find('^');
        auto close = s.rfind(')');
        long p = std::stol(s.substr(2, caret - 2));
        long N = std::stol(s.substr(caret + 1, close - caret - 1));
        return zero(p, N);
    }
    std::istringstream is(s);
    long p = 0, v = 0, rel = 0;
    char caret = 0, star = 0;
    std::string unit_str, kw, modbase;
    is >> p >> caret >> v >> star >> unit_str >> kw >> modbase;
    auto c2 = modbase.find('^');
    rel = std::stol(modbase.substr(c2 + 1));
    if (caret != '^' || star != '*' || kw != "mod" || !is)
        throw MathError("bad p-adic token: " + s);
    return from_unit_part(p, v, mpz_class(unit_str), rel);
}

std::vector<long> PadicElement::unit_digits() const {
    std::vector<long> d;
    if (zero_) return d;
    mpz_class u = unit_, q, r;
    for (long i = 0; i < abs_ - val_; ++i) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), u.get_mpz_t(),
                       static_cast<unsigned long>(p_));
        d.push_back(mpz_get_si(r.get_mpz_t()));
        u = q;
    }
    return d;
}

PadicElement PadicElement::from_digits(long p, long valuation, const std::vector<long>& digits,
                                       long abs_prec) {
    if (digits.empty()) return zero(p, abs_prec);
    mpz_class u = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) u = u * p + *it;
    return from_unit_part(p, valuation, u, static_cast<long>(digits.size()));
}

} // namespace padh
