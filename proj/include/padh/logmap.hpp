#pragma once

#include "padh/padic.hpp"

namespace padh {

/// Teichmüller representative: the (p-1)-st root of unity congruent to x mod p.
PadicElement teichmuller(const PadicElement& x);

/// Branch of the p-adic logarithm, fixed by the chosen value at p.
struct LogBranch {
    long p;
    PadicElement value_at_p;

    static LogBranch iwasawa(long p, long prec);
    static LogBranch at_p(const PadicElement& lambda_p);

    /// lambda(x) = v(x)*lambda(p) + log of the principal-unit part.
    PadicElement operator()(const PadicElement& x) const;
};

/// rho = delta o lambda with scalar delta (base field Q_p).
struct RhoFunctional {
    LogBranch branch;
    PadicElement delta_scale;

    PadicElement operator()(const PadicElement& x) const {
        return delta_scale * branch(x);
    }
};

/// log(u) for a principal unit u = 1 mod p, via the alternating series with
/// p-power argument reduction.
PadicElement log_principal_unit(const PadicElement& u);

} // namespace padh
