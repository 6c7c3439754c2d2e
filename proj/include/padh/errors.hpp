#pragma once

#include <stdexcept>
#include <string>

namespace padh {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByIndistinguishableZero : MathError {
    DivisionByIndistinguishableZero() : MathError("division by a value indistinguishable from zero") {}
};
struct PrecisionExhausted : MathError {
    explicit PrecisionExhausted(const std::string& what) : MathError("precision exhausted: " + what) {}
};
struct NotAUnit : MathError {
    NotAUnit() : MathError("argument is not a p-adic unit") {}
};
struct NonSimpleRoot : MathError {
    NonSimpleRoot() : MathError("seed is not a simple root modulo p") {}
};
struct NotOrdinary : MathError {
    NotOrdinary() : MathError("slope-0 multiplicity deficient (non-ordinary input)") {}
};
struct DegenerateFiltration : MathError {
    DegenerateFiltration() : MathError("invariant subspace meets the unit-root subspace") {}
};
struct DiagramInconsistent : MathError {
    explicit DiagramInconsistent(const std::string& what) : MathError("diagram inconsistent: " + what) {}
};
struct BadReduction : MathError {
    BadReduction() : MathError("curve has bad reduction at p") {}
};
struct EvenPrimeUnsupported : MathError {
    EvenPrimeUnsupported() : MathError("p < 5 unsupported here") {}
};
struct NotClosed : MathError {
    NotClosed() : MathError("form is not closed") {}
};
struct NotLogarithmic : MathError {
    NotLogarithmic() : MathError("form has a pole of order >= 2 along a coordinate divisor") {}
};
struct IdentityPoint : MathError {
    IdentityPoint() : MathError("point is the identity class") {}
};
struct IncompatibleFibers : MathError {
    IncompatibleFibers() : MathError("biextension partial law applied to incompatible fibers") {}
};
struct NotInFormalPart : MathError {
    NotInFormalPart() : MathError("point is not in the formal part") {}
};
struct SearchBoundExceeded : MathError {
    SearchBoundExceeded() : MathError("multiplier search bound exceeded") {}
};
struct ConstraintInconsistent : MathError {
    ConstraintInconsistent() : MathError("splitting constraint system has no solution") {}
};
struct SupportsIntersect : MathError {
    SupportsIntersect() : MathError("divisor and cycle supports intersect") {}
};
struct NotMultiplicative : MathError {
    NotMultiplicative() : MathError("curve is not split multiplicative at p") {}
};
struct SupportHit : MathError {
    SupportHit() : MathError("evaluation point hits the support of the function") {}
};
struct DivisorChoiceUnavailable : MathError {
    DivisorChoiceUnavailable() : MathError("could not separate divisor and cycle supports") {}
};

} // namespace padh
