#pragma once
// Pointwise decay bound for radial u on |x| >= 1:
//   |u(r)| <= (sqrt(2) c1 / 4 pi) T^(1/2) [ I1(r)^(1/2) + I2(r)^(1/2) ] + c2/r^2
// with  T  = int_{|x|>=1} |Lap u|^2 chi dx,
//       I1 = int_r^inf 1/(chi(y) y) dy,
//       I2 = (1/r^2) int_1^r y/chi(y) dy,
//       c1 = 1, c2 = |-2 pi u'(1)|.
// Also verifies the change-of-variables identity behind its proof:
//   w(s) = 4 pi u(s^(-1/2))  =>  w''(s) = pi s^-3 Lap u(s^(-1/2)).

#include <vector>

#include "wadams/radial_core.hpp"

namespace wadams {

struct MarginRow {
  double r = 1.0;
  double lhs = 0.0;     // |u(r)|
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
};

struct MarginReport {
  std::vector<MarginRow> rows;
  double min_margin = 0.0;
  bool pass = false;
};

struct LemmaConstants {
  double c1 = 1.0;
  double c2 = 0.0;  // |-2 pi u'(1)|; filled from u when negative
};

// RHS of the bound at radius r >= 1 (throws for r < 1).
double radial_bound_rhs(const RadialFunction& u, const WeightProfile& profile,
                        double r, const LemmaConstants& constants,
                        const QuadratureSpec& quad = {});

// Margin report over the given radii; pass iff lhs <= rhs + tol everywhere.
MarginReport verify_radial_lemma(const RadialFunction& u,
                                 const WeightProfile& profile,
                                 const std::vector<double>& radii, double tol,
                                 const QuadratureSpec& quad = {});

// Max relative residual |w''(s) - pi s^-3 Lap u| / (1 + |w''|) over the
// samples (s in (0,1]); w'' by high-order finite differences in s.
double half_space_transform_check(const RadialFunction& u,
                                  const std::vector<double>& s_samples);

// Deterministic corpus of n random smooth decaying radial profiles
// (Gaussian + rational-decay mixtures with closed-form Laplacians).
std::vector<RadialFunction> random_radial_corpus(int n, unsigned long seed);

}  // namespace wadams
