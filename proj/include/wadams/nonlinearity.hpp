#pragma once
// The model nonlinearity family and its growth certificates. With
// m = 2/(1-beta) and t = alpha s^m:
//   F(s) = C s^p (e^t - 1)           for s >= 0, 0 for s < 0
//   f(s) = F'(s) = C s^(p-1) [(p + m t) e^t - p]
// Certified conditions:
//   (G1)  |f(s)| <= c0 (s^(p-1) + s^(q-1)(e^t - 1)),
//   (G2)  F(s) <= M0 f(s) for s >= s0,
//   (G3)  liminf f(s) s / e^t >= kappa with
//         kappa > 2/(pi^2 e^4) (alpha_beta/alpha)^(1-beta).
// The checkers also accept arbitrary (f, F) pairs (e.g. tabulated).

#include <functional>
#include <vector>

#include "wadams/weights.hpp"

namespace wadams {

struct GrowthParams {
  double p = 5.0;
  double q = 9.0;  // default p + 2/(1-beta): smallest growth order certifiable
  double alpha = 1.0;
  double beta = 0.5;
  double C = 1.0;
  double c0 = 1.0;
  bool valid() const;           // min{p,q} > 2/(1-beta), positives
  double m() const;             // 2/(1-beta)
};

// F'(s); exactly 0 for s <= 0; expm1-based for small s; +inf once the
// exponent passes the overflow guard.
double f_model(double s, const GrowthParams& params);
// C s^p (e^t - 1); 0 for s <= 0; +inf on overflow.
double F_model(double s, const GrowthParams& params);
// d f / d s, needed by the Newton polish in the solver.
double fprime_model(double s, const GrowthParams& params);

// Optional override pair for the checkers; empty members fall back to the
// model functions.
struct NonlinearityFns {
  std::function<double(double)> f;
  std::function<double(double)> F;
};

// Pointwise growth-bound check. Reports the minimal feasible c0 over the
// samples and the log-log slope of the ratio over the top decade; a positive
// slope means no finite c0 works and the check fails.
ConditionReport check_F1(const GrowthParams& params,
                         const std::vector<double>& s_samples,
                         const NonlinearityFns& fns = {});

// F <= M0 f on samples >= s0; reports the minimal feasible M0.
ConditionReport check_F2(const GrowthParams& params, double M0, double s0,
                         const std::vector<double>& s_samples,
                         const NonlinearityFns& fns = {});

struct F3Result {
  double liminf_estimate = 0.0;  // ratio at the largest sample
  double kappa_threshold = 0.0;  // 2/(pi^2 e^4) (alpha_beta/alpha)^(1-beta)
  bool pass = false;
  bool conclusive = false;  // false when the tail ratio is not monotone
};

// Tail-ratio check via the overflow-free form
//   f(s) s / e^t = C s^p [(p + m t) - p e^(-t)].
F3Result check_F3(const GrowthParams& params, double s_max);

// Mountain-pass level ceiling (1/2)(alpha_beta/alpha)^(1-beta).
double m_star(double alpha, double beta);

// Geometric sample ladder [s_lo, s_hi], n points, for the checkers.
std::vector<double> growth_samples(double s_lo, double s_hi, int n);

}  // namespace wadams
