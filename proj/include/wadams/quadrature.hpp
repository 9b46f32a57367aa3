#pragma once
// Adaptive Gauss-Kronrod (7-15) quadrature on finite intervals, plus a helper
// for improper integrals over [a, +inf) of integrands with (at worst) power-law
// decay. Every integral in this library that crosses r = 1 is split there by the
// caller because the weight has a kink at r = 1.

#include <functional>

namespace wadams {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_depth = 50;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // estimated absolute error
  bool converged = true;
};

using Integrand = std::function<double(double)>;

// Integral of f over [a, b], a <= b.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadratureSpec& spec = {});

// Integral of f over [a, +inf). `decay_exponent` p is a lower bound on the
// eventual decay of |f| (|f(r)| <~ |f(R)| (r/R)^-p for large R), p > 1.
// The domain is extended by doubling until the analytic tail estimate
// |f(R)| R / (p - 1) is below tolerance; that estimate is added to the error.
QuadResult integrate_power_tail(const Integrand& f, double a,
                                double decay_exponent,
                                const QuadratureSpec& spec = {});

}  // namespace wadams
