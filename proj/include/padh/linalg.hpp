#pragma once

#include <vector>

#include "padh/padic.hpp"

namespace padh {

/// Dense matrix of p-adic numbers.
class PadicMatrix {
public:
    PadicMatrix() = default;
    PadicMatrix(long rows, long cols, const PadicElement& fill);
    static PadicMatrix identity(long n, long p, long rel_prec);
    static PadicMatrix zero_matrix(long rows, long cols, long p, long abs_prec);

    long rows() const { return rows_; }
    long cols() const { return cols_; }
    PadicElement& at(long i, long j) { return data_[i * cols_ + j]; }
    const PadicElement& at(long i, long j) const { return data_[i * cols_ + j]; }

    PadicMatrix operator+(const PadicMatrix& o) const;
    PadicMatrix operator-(const PadicMatrix& o) const;
    PadicMatrix operator*(const PadicMatrix& o) const;
    PadicMatrix operator*(const PadicElement& s) const;
    PadicMatrix transpose() const;
    PadicMatrix inverse() const; // Gauss with minimal-valuation pivoting
    PadicMatrix pow(long n) const;

    /// Horizontal / vertical concatenation.
    static PadicMatrix hcat(const PadicMatrix& a, const PadicMatrix& b);
    static PadicMatrix vcat(const PadicMatrix& a, const PadicMatrix& b);
    PadicMatrix col_slice(long c0, long c1) const; // columns [c0, c1)
    PadicMatrix row_slice(long r0, long r1) const;

    /// Rank judged at the given number of digits (entries with valuation >= tol
    /// treated as zero).
    long rank(long zero_tol) const;
    /// Column span basis in column echelon form; pivot rows returned if wanted.
    PadicMatrix column_echelon(long zero_tol, std::vector<long>* pivot_rows = nullptr) const;
    /// Kernel basis (columns) of this matrix, judged at zero_tol.
    PadicMatrix kernel(long zero_tol) const;
    /// Solve this * X = B (square, invertible).
    PadicMatrix solve(const PadicMatrix& b) const;

    bool equal_mod(const PadicMatrix& o, long k) const;
    /// True if the column spans coincide at the given tolerance.
    static bool same_column_span(const PadicMatrix& a, const PadicMatrix& b, long zero_tol);

private:
    long rows_ = 0, cols_ = 0;
    std::vector<PadicElement> data_;
};

/// Polynomial with p-adic coefficients, lowest degree first.
struct PadicPoly {
    std::vector<PadicElement> coeff;

    long degree() const { return static_cast<long>(coeff.size()) - 1; }
    PadicElement eval(const PadicElement& x) const;
    PadicPoly derivative() const;
};

/// Simple-root Newton lifting from a residue seed mod p.
PadicElement hensel_root(const PadicPoly& f, long seed, long p, long rel_prec);

/// Characteristic polynomial by the division-free Berkowitz algorithm, monic,
/// lowest degree first.
PadicPoly charpoly(const PadicMatrix& m);

} // namespace padh
