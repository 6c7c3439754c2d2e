#pragma once

#include <gmpxx.h>

#include "padh/linalg.hpp"

namespace padh {

/// Genus-1 curve y^2 = x^3 + a x + b with good reduction at p >= 5.
struct GoodCurve {
    long p = 0;
    mpz_class a, b;
};

struct FrobResult {
    PadicMatrix matrix; // on the basis {dx/y, x dx/y}
    PadicPoly charpoly;
    long a_p = 0;
};

/// a_p = p + 1 - #E(F_p) by exhaustive enumeration.
long count_points_naive(const GoodCurve& c);

/// Frobenius matrix on the odd part of Monsky-Washnitzer cohomology, computed
/// by lifting x -> x^p and reducing the pulled-back forms against the exact
/// cohomology relations (all intermediate arithmetic is exact rational; the
/// only p-adic error is the certified series truncation).
FrobResult frobenius_matrix(const GoodCurve& c, long prec);

} // namespace padh
