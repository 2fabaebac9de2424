#pragma once

#include <functional>

namespace steer {

// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b].
// Subdivides until the local |K15 - G7| estimate is below the tolerance
// share of the interval. abs_tol is an absolute tolerance on the result.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

// Scalar bisection for a root of f on [lo, hi]. Requires a sign change
// (throws steer::NoBracket otherwise). Runs until the bracket is narrower
// than x_tol.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tol = 1e-12);

// Golden-section maximization of f on [lo, hi]; returns the argmax.
// f is assumed unimodal on the bracket; with multimodal input the result
// is a local maximizer.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol = 1e-12);

}  // namespace steer
