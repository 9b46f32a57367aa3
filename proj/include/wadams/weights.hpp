#pragma once
// The radial weight on R^4:
//   w_beta(r) = (log(e/r))^beta          for r < 1,
//   w_beta(r) = chi(r)                   for r >= 1,
// with 0 < beta < 1, chi(1) = 1, inf chi > 0. This module represents the weight
// and certifies, numerically, every structural condition imposed on chi:
//   (C0)   int_1^inf  1/(chi(y) y) dy            < inf
//   (C0')  int_1^inf  y/chi(y) dy                < inf
//   (C1)   (1/r^8) (int_1^r t^3 chi dt)(int_1^r t^3/chi dt)  <= M  for r >= 1
//   (C2)   (1/r^8)  int_1^r t^3 chi dt                       <= M  for r >= 1
//   (C3)   max chi / min chi on [r, 4r]                      <= M  for r >= 1
// plus the Muckenhoupt A2 ball products and the growth integrals
//   J1(k) = int_1^inf r^3 (int_r^inf 1/(chi y) dy)^(k/(1-beta)) dr
//   J2(k) = int_1^inf r^(3 - 2k/(1-beta)) (int_1^r y/chi dy)^(k/(1-beta)) dr.
// J2(k) is structurally divergent for k <= 2(1-beta) (the inner integral tends
// to a positive constant, so the integrand is ~ r^(3-2k/(1-beta))); those k are
// exempted and recorded, not failed.

#include <string>
#include <vector>

#include "wadams/quadrature.hpp"

namespace wadams {

struct ChiSpec {
  enum class Kind { Power, Table };
  Kind kind = Kind::Power;
  // Power: chi(y) = y^a, a > 0.
  double a = 3.0;
  // Table: positive samples on [1, r.back()], monotone-cubic interpolated,
  // extended past the table by vals.back() * (y / r.back())^tail_exponent.
  std::vector<double> r, vals;
  double tail_exponent = 0.0;
  bool has_tail_exponent = false;

  static ChiSpec power(double a);
  static ChiSpec table(std::vector<double> r, std::vector<double> vals,
                       double tail_exponent);
  double eval(double y) const;  // y >= 1
  double inf_estimate() const;
};

struct WeightProfile {
  double beta = 0.5;  // in (0,1)
  ChiSpec chi;
  double eval(double r) const;  // r > 0
  bool valid(std::string* why = nullptr) const;
};

struct ConditionEntry {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;  // 0 when the test is pure finiteness/boundedness
  bool pass = false;
  double margin = 0.0;
  std::string note;
};

struct ConditionReport {
  std::string title;
  std::vector<ConditionEntry> entries;
  bool pass() const;
};

// Structural conditions (C0), (C0'), (C1), (C2), (C3). Suprema are taken over a
// geometric grid r = 1.1^j up to r_max (>= 1e3); improper integrals are split at
// 1e6 with the analytic power tail. Boundedness of (C1)-(C3) is judged
// empirically: the supremum over the last decade must not exceed the supremum
// over the previous decade by more than 5%.
ConditionReport check_structural_conditions(const WeightProfile& profile,
                                            const QuadratureSpec& quad = {},
                                            double r_max = 1e6);

struct Ball {
  double center_radius = 0.0;  // |x0|
  double radius = 1.0;         // rho
};

// 64 balls mixing overlapping (|x0| < 2 rho) and separated (|x0| >= 2 rho)
// geometries, radii log-spaced in [1e-3, 1e3].
std::vector<Ball> default_ball_suite();

// A2 products (avg of w)(avg of 1/w) over each sampled ball, computed by exact
// spherical-cap radial reduction + quadrature. Reports the per-ball products and
// the suite maximum as the empirical A2 constant.
ConditionReport check_a2(const WeightProfile& profile,
                         const std::vector<Ball>& balls,
                         const QuadratureSpec& quad = {});

// J1(k), J2(k) for k = 1..k_max; reports the sequences J_i(k)^(1/k), the fitted
// constants C1, C2 = max_k J_i(k)^(1/k), and pass/fail. J2 skips the exempt k.
ConditionReport check_growth_conditions_D(const WeightProfile& profile,
                                          int k_max = 12,
                                          const QuadratureSpec& quad = {});

}  // namespace wadams
