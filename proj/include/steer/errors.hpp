#pragma once

#include <stdexcept>
#include <string>

namespace steer {

// Base class for all domain-guard failures (bad prices, costs, regimes).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Search cost outside [0, 1/2] under the uniform match distribution.
struct CostOutOfRange : DomainError {
    using DomainError::DomainError;
};

// s = 0 makes the bonus vanish and the IC ratios 0/0; implementability
// is undefined by the formulas there.
struct DegenerateBonus : DomainError {
    using DomainError::DomainError;
};

// Deviation FOC has no interior maximum (negative discriminant).
struct NoInteriorMaximum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// H(p,p) has no root on the scanned diagonal: P is degenerate.
struct NoRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bisection bracket with no sign change.
struct NoBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Constraint set empty (prices outside P, or P itself empty).
struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Corner operation called on a price pair that belongs to the plain regime.
struct WrongRegime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace steer
