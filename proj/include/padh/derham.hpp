#pragma once

#include <gmpxx.h>
#include <map>
#include <string>
#include <vector>

#include "padh/errors.hpp"

namespace padh {

/// Laurent polynomial in t variables: monomial exponent vector -> coefficient.
using LaurentFunction = std::map<std::vector<long>, mpq_class>;

/// 1-form sum of c * z^m dz_n: key is (exponent vector, variable index n).
struct LaurentForm {
    long t = 0;
    std::map<std::pair<std::vector<long>, long>, mpq_class> terms;

    void add_term(const std::vector<long>& m, long n, const mpq_class& c);
};

/// Exterior derivative of a Laurent function.
LaurentForm d_of(const LaurentFunction& g, long t);

/// d(omega) == 0 identically as a Laurent 2-form.
bool is_closed(const LaurentForm& omega);

struct ReduceResult {
    std::vector<mpq_class> coeffs; // coordinates on dz_n/z_n
    LaurentFunction primitive;     // omega = sum coeffs_n dz_n/z_n + d(primitive)
};

/// Express a closed logarithmic-pole form as constants times dz_n/z_n plus an
/// exact form; the identity is exact in rational arithmetic.
ReduceResult reduce_form(const LaurentForm& omega);

long h1_dim(long t);

/// Line format: `coef * z1^a1 z2^a2 d z_n` (exponent factors optional).
LaurentForm parse_laurent_form(const std::vector<std::string>& lines, long t);

} // namespace padh
