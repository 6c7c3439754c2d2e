#include "padh/linalg.hpp"

#include <utility>

namespace padh {

PadicMatrix::PadicMatrix(long rows, long cols, const PadicElement& fill)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows * cols), fill) {}

PadicMatrix PadicMatrix::identity(long n, long p, long rel_prec) {
    PadicMatrix m(n, n, PadicElement::exact_zero(p));
    for (long i = 0; i < n; ++i) m.at(i, i) = PadicElement::from_int(p, 1, rel_prec);
    return m;
}

PadicMatrix PadicMatrix::zero_matrix(long rows, long cols, long p, long abs_prec) {
    return PadicMatrix(rows, cols, PadicElement::zero(p, abs_prec));
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
    PadicMatrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const {
    PadicMatrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
    if (cols_ != o.rows_) throw MathError("matrix dimension mismatch");
    long p = data_.empty() ? (o.data_.empty() ? 0 : o.data_[0].prime()) : data_[0].prime();
    PadicMatrix r(rows_, o.cols_, PadicElement::exact_zero(p));
    for (long i = 0; i < rows_; ++i)
        for (long k = 0; k < cols_; ++k) {
            const PadicElement& a = at(i, k);
            if (a.is_zero() && a.abs_precision() >= PadicElement::kInfPrec) continue;
            for (long j = 0; j < o.cols_; ++j)
                r.at(i, j) = r.at(i, j) + a * o.at(k, j);
        }
    return r;
}

PadicMatrix PadicMatrix::operator*(const PadicElement& s) const {
    PadicMatrix r = *this;
    for (auto& e : r.data_) e = e * s;
    return r;
}

PadicMatrix PadicMatrix::transpose() const {
    PadicMatrix r(cols_, rows_, data_.empty() ? PadicElement() : data_[0]);
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

PadicMatrix PadicMatrix::pow(long n) const {
    if (rows_ != cols_) throw MathError("pow of non-square matrix");
    long p = data_[0].prime();
    PadicMatrix result = identity(rows_, p, PadicElement::kInfPrec);
    PadicMatrix base = *this;
    for (long e = n; e > 0; e >>= 1) {
        if (e & 1) result = result * base;
        if (e > 1) base = base * base;
    }
    return result;
}

PadicMatrix PadicMatrix::hcat(const PadicMatrix& a, const PadicMatrix& b) {
    if (a.rows_ != b.rows_) throw MathError("hcat row mismatch");
    PadicMatrix r(a.rows_, a.cols_ + b.cols_, PadicElement());
    for (long i = 0; i < a.rows_; ++i) {
        for (long j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
        for (long j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
    }
    return r;
}

PadicMatrix PadicMatrix::vcat(const PadicMatrix& a, const PadicMatrix& b) {
    if (a.cols_ != b.cols_) throw MathError("vcat col mismatch");
    PadicMatrix r(a.rows_ + b.rows_, a.cols_, PadicElement());
    for (long i = 0; i < a.rows_; ++i)
        for (long j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (long i = 0; i < b.rows_; ++i)
        for (long j = 0; j < a.cols_; ++j) r.at(a.rows_ + i, j) = b.at(i, j);
    return r;
}

PadicMatrix PadicMatrix::col_slice(long c0, long c1) const {
    PadicMatrix r(rows_, c1 - c0, PadicElement());
    for (long i = 0; i < rows_; ++i)
        for (long j = c0; j < c1; ++j) r.at(i, j - c0) = at(i, j);
    return r;
}

PadicMatrix PadicMatrix::row_slice(long r0, long r1) const {
    PadicMatrix r(r1 - r0, cols_, PadicElement());
    for (long i = r0; i < r1; ++i)
        for (long j = 0; j < cols_; ++j) r.at(i - r0, j) = at(i, j);
    return r;
}

namespace {

// Row echelon in place with minimal-valuation pivoting; returns pivot columns.
// Entries indistinguishable from zero below p^zero_tol are treated as zero.
std::vector<long> row_echelon_inplace(PadicMatrix& m, long zero_tol, bool reduced) {
    std::vector<long> pivots;
    long r = 0;
    for (long c = 0; c < m.cols() && r < m.rows(); ++c) {
        long best = -1;
        long best_val = 0;
        for (long i = r; i < m.rows(); ++i) {
            const PadicElement& e = m.at(i, c);
            if (e.is_zero() || e.is_zero_to(zero_tol)) continue;
            if (best < 0 || e.valuation() < best_val) {
                best = i;
                best_val = e.valuation();
            }
        }
        if (best < 0) continue;
        if (best != r)
            for (long j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(best, j));
        PadicElement piv = m.at(r, c);
        for (long i = (reduced ? 0 : r + 1); i < m.rows(); ++i) {
            if (i == r) continue;
            const PadicElement& e = m.at(i, c);
            if (e.is_zero() || e.is_zero_to(zero_tol)) continue;
            PadicElement f = e / piv;
            for (long j = 0; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        if (reduced) {
            PadicElement pinv = piv.inverse();
            for (long j = 0; j < m.cols(); ++j) m.at(r, j) = m.at(r, j) * pinv;
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

long PadicMatrix::rank(long zero_tol) const {
    PadicMatrix m = *this;
    return static_cast<long>(row_echelon_inplace(m, zero_tol, false).size());
}

PadicMatrix PadicMatrix::column_echelon(long zero_tol, std::vector<long>* pivot_rows) const {
    PadicMatrix m = transpose();
    auto piv = row_echelon_inplace(m, zero_tol, true);
    if (pivot_rows) *pivot_rows = piv;
    long r = static_cast<long>(piv.size());
    return m.row_slice(0, r).transpose();
}

PadicMatrix PadicMatrix::kernel(long zero_tol) const {
    PadicMatrix m = *this;
    auto piv = row_echelon_inplace(m, zero_tol, true);
    long p = data_.empty() ? 0 : data_[0].prime();
    std::vector<long> is_pivot(cols_, -1);
    for (size_t k = 0; k < piv.size(); ++k) is_pivot[piv[k]] = static_cast<long>(k);
    long nk = cols_ - static_cast<long>(piv.size());
    PadicMatrix K(cols_, nk, PadicElement::exact_zero(p));
    long col = 0;
    for (long j = 0; j < cols_; ++j) {
        if (is_pivot[j] >= 0) continue;
        K.at(j, col) = PadicElement::from_int(p, 1, PadicElement::kInfPrec);
        for (size_t k = 0; k < piv.size(); ++k)
            K.at(piv[k], col) = -m.at(static_cast<long>(k), j);
        ++col;
    }
    return K;
}

PadicMatrix PadicMatrix::inverse() const {
    if (rows_ != cols_) throw MathError("inverse of non-square matrix");
    if (rows_ == 0) return *this;
    long p = data_[0].prime();
    PadicMatrix aug = hcat(*this, identity(rows_, p, PadicElement::kInfPrec));
    auto piv = row_echelon_inplace(aug, PadicElement::kInfPrec / 2, true);
    if (static_cast<long>(piv.size()) != rows_) throw MathError("matrix not invertible");
    for (long k = 0; k < rows_; ++k)
        if (piv[k] != k) throw MathError("matrix not invertible");
    return aug.col_slice(cols_, 2 * cols_);
}

PadicMatrix PadicMatrix::solve(const PadicMatrix& b) const { return inverse() * b; }

bool PadicMatrix::equal_mod(const PadicMatrix& o, long k) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (long i = 0; i < rows_; ++i)
        for (long j = 0; j < cols_; ++j)
            if (!(at(i, j) - o.at(i, j)).is_zero_to(k)) return false;
    return true;
}

bool PadicMatrix::same_column_span(const PadicMatrix& a, const PadicMatrix& b, long zero_tol) {
    long ra = a.rank(zero_tol), rb = b.rank(zero_tol);
    if (ra != rb) return false;
    return hcat(a, b).rank(zero_tol) == ra;
}

PadicElement PadicPoly::eval(const PadicElement& x) const {
    long p = x.prime();
    PadicElement acc = PadicElement::exact_zero(p);
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PadicPoly PadicPoly::derivative() const {
    PadicPoly d;
    for (size_t i = 1; i < coeff.size(); ++i)
        d.coeff.push_back(coeff[i] *
                          PadicElement::from_int(coeff[i].prime(), static_cast<long>(i),
                                                 PadicElement::kInfPrec));
    return d;
}

PadicElement hensel_root(const PadicPoly& f, long seed, long p, long rel_prec) {
    PadicElement x = PadicElement::from_int(p, seed, rel_prec);
    PadicPoly df = f.derivative();
    if (!f.eval(x).is_zero_to(1)) throw MathError("hensel_root: seed is not a root mod p");
    PadicElement d0 = df.eval(x);
    if (d0.is_zero() || d0.valuation() > 0) throw NonSimpleRoot();
    for (long it = 0; it < 2 * rel_prec + 4; ++it) {
        PadicElement fx = f.eval(x);
        if (fx.is_zero_to(rel_prec)) break;
        x = x - fx / df.eval(x);
    }
    if (!f.eval(x).is_zero_to(rel_prec))
        throw PrecisionExhausted("hensel_root failed to converge");
    return x;
}

PadicPoly charpoly(const PadicMatrix& m) {
    if (m.rows() != m.cols()) throw MathError("charpoly of non-square matrix");
    long n = m.rows();
    long p = m.at(0, 0).prime();
    auto one = PadicElement::from_int(p, 1, PadicElement::kInfPrec);
    // Berkowitz: descending-coefficient vector, extended one principal minor at a time.
    std::vector<PadicElement> cp{one};
    for (long k = 1; k <= n; ++k) {
        // A_{k-1} | S ; R | a
        std::vector<PadicElement> col;
        col.reserve(k + 1);
        col.push_back(one);
        col.push_back(-m.at(k - 1, k - 1));
        std::vector<PadicElement> v(k - 1);
        for (long i = 0; i < k - 1; ++i) v[i] = m.at(i, k - 1);
        for (long step = 0; step + 2 < k + 1; ++step) {
            PadicElement dot = PadicElement::exact_zero(p);
            for (long i = 0; i < k - 1; ++i) dot = dot + m.at(k - 1, i) * v[i];
            col.push_back(-dot);
            if (step + 3 < k + 1) {
                std::vector<PadicElement> nv(k - 1, PadicElement::exact_zero(p));
                for (long i = 0; i < k - 1; ++i)
                    for (long j = 0; j < k - 1; ++j) nv[i] = nv[i] + m.at(i, j) * v[j];
                v = std::move(nv);
            }
        }
        std::vector<PadicElement> next(k + 1, PadicElement::exact_zero(p));
        for (long i = 0; i <= k; ++i)
            for (long j = 0; j < k && j <= i; ++j)
                next[i] = next[i] + col[i - j] * cp[j];
        cp = std::move(next);
    }
    PadicPoly out;
    out.coeff.assign(cp.rbegin(), cp.rend());
    return out;
}

} // namespace padh
