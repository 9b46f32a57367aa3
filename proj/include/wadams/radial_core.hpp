#pragma once
// Radial calculus on R^4: grids, radial profiles with their Laplacian
// (Lap u = u'' + 3 u'/r), the volume element 2 pi^2 r^3 dr, the weighted
// seminorm ||u||_w^2 = 2 pi^2 int w(r) |Lap u|^2 r^3 dr, Lp norms, the
// exponential functional int (exp(alpha |u|^(2/(1-beta))) - 1) dx and its
// series form, the sharp exponent alpha_beta, and the concentration limit.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wadams/quadrature.hpp"
#include "wadams/weights.hpp"

namespace wadams {

struct RadialGrid {
  std::vector<double> nodes;  // strictly increasing, geometric, contains 1
  double nodes_per_decade = 10.0;

  // Geometric grid 10^(j/npd) covering [r_min, r_max]; r = 1 is always a node
  // (the weight has a kink there).
  static RadialGrid make(double r_min = 1e-8, double r_max = 1e3,
                         int nodes_per_decade = 10);
};

// A closed-form piece on [r_lo, r_hi): value, its radial Laplacian, and
// (optionally) its radial derivative.
struct Piece {
  double r_lo = 0.0, r_hi = 0.0;
  std::function<double(double)> value;
  std::function<double(double)> laplacian;   // may be empty
  std::function<double(double)> derivative;  // may be empty
};

class RadialFunction {
 public:
  // Closed-form profile. If the last piece ends at a finite radius the
  // function is zero beyond it; otherwise set r_hi = +inf on the last piece
  // and declare the decay exponent d (|u| <~ r^-d).
  static RadialFunction closed_form(std::vector<Piece> pieces,
                                    double decay_exponent = 2.0);
  // Sampled profile on a grid; extended beyond the grid by the declared decay
  // exponent (d >= 2 so the exponential-functional tails converge).
  static RadialFunction sampled(RadialGrid grid, std::vector<double> values,
                                double decay_exponent);

  double value(double r) const;
  bool has_laplacian() const;
  double laplacian(double r) const;
  bool has_derivative() const;
  double derivative(double r) const;

  bool is_closed_form() const { return closed_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const RadialGrid& grid() const { return grid_; }
  const std::vector<double>& samples() const { return values_; }

  double decay_exponent() const { return decay_; }
  // finite end of support, or +inf
  double support_end() const;
  // interval endpoints where smoothness may break (always includes 1 when the
  // range crosses it); quadratures split here
  std::vector<double> breakpoints() const;
  // crude sup |u| estimate by dense sampling (exact enough for tail bounds)
  double sup_abs() const;

 private:
  bool closed_ = true;
  std::vector<Piece> pieces_;
  RadialGrid grid_;
  std::vector<double> values_;
  std::vector<double> lap_values_;  // set for sampled Laplacians
  double decay_ = 2.0;
  friend RadialFunction radial_laplacian(const RadialFunction&);
};

// Exact piecewise Laplacian for closed forms (the pieces must carry one);
// 4th-order log-grid finite differences for sampled profiles, with one-sided
// stencils at the kink r = 1. Requires >= 5 nodes per decade.
RadialFunction radial_laplacian(const RadialFunction& u);

// 2 pi^2 int_0^inf g(r) r^3 dr; the declared decay must make r^3 g integrable.
QuadResult integrate_radial(const RadialFunction& g,
                            const QuadratureSpec& quad = {});

// sqrt( 2 pi^2 int w(r) |Lap u|^2 r^3 dr ), split at r = 1.
double weighted_seminorm(const RadialFunction& u, const WeightProfile& profile,
                         const QuadratureSpec& quad = {});

// (2 pi^2 int |u|^p r^3 dr)^(1/p). Returns the value; *below_embedding is set
// when p < 2/(1-beta) for the caller to warn on.
double lp_norm(const RadialFunction& u, double p, double beta,
               const QuadratureSpec& quad = {},
               bool* below_embedding = nullptr);

struct AdamsValue {
  double value = 0.0;
  bool overflow = false;     // exponent overflowed: meaningful blow-up signal
  double blowup_radius = 0;  // where it overflowed
  double error = 0.0;
};

// 2 pi^2 int (exp(alpha |u|^(2/(1-beta))) - 1) r^3 dr with expm1 evaluation.
AdamsValue adams_functional(const RadialFunction& u, double alpha, double beta,
                            const QuadratureSpec& quad = {});

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::vector<double> terms;
};

// Partial sum  sum_{k<=K} alpha^k/k! * 2 pi^2 int |u|^(2k/(1-beta)) r^3 dr
// plus a geometric tail bound from s = sup |u|^(2/(1-beta)) (needs alpha s <
// K+2). value + tail_bound brackets adams_functional.
SeriesValue adams_functional_series(const RadialFunction& u, double alpha,
                                    double beta, int K,
                                    const QuadratureSpec& quad = {});

// Sharp exponent 4 (8 pi^2 (1-beta))^(1/(1-beta)), evaluated in long double.
double alpha_beta(double beta);

// 1/(1 - t^2)^(1/(1-beta)) for t = norm in [0,1]; +inf at t = 1.
double concentration_limit_pbeta(double norm_u, double beta);

}  // namespace wadams
