#pragma once
// The concentrating log-bubble family u_eps on R^4 and the sharp-exponent
// dichotomy sweep. With L = log(e^4/eps), A = alpha_beta, D = ((A/16) L)^((1-beta)/2):
//   inner  (r <= eps^(1/4)):  (L/A)^((1-beta)/2)
//                             - r^(2(1-beta)) / (2 (A eps/4)^((1-beta)/2) (L/4)^((1+beta)/2))
//                             + 1 / (2 (A/4)^((1-beta)/2) (L/4)^((1+beta)/2))
//   middle (eps^(1/4) < r <= 1/2):  (log(e/r))^(1-beta) / D
//   cap    (1/2 < r < 1): quintic polynomial matching value/slope at 1/2
//          (and curvature, fixing its free coefficient) and vanishing to
//          second order at 1; zero beyond 1.
// The Laplacians are the exact symbolic derivatives of the value pieces; a
// diagnostic reports how far an alternative printed variant using log(1/eps)
// and log(1/r) deviates from them.

#include <vector>

#include "wadams/radial_core.hpp"

namespace wadams {

struct AdamsFamilyParams {
  double epsilon = 1e-4;  // in (0, e^4), with eps^(1/4) < 1/2
  double beta = 0.5;
  static AdamsFamilyParams from_n(int n, double beta);  // eps = 1/n, n >= 2
  bool valid() const;
};

// The family member as a closed-form radial function (value, Laplacian and
// derivative on every piece). Construction verifies continuity at eps^(1/4)
// and 1/2 to 1e-9 relative and throws otherwise.
RadialFunction adams_family(const AdamsFamilyParams& params);

// Max relative deviation between the symbolic Laplacian and the variant that
// uses log(1/eps), log(1/r) in place of log(e^4/eps), log(e/r), sampled on the
// inner and middle pieces. Reported, never silently substituted.
double printed_laplacian_discrepancy(const AdamsFamilyParams& params);

struct NormDecomposition {
  double A1 = 0.0;  // [0, eps^(1/4)]
  double A2 = 0.0;  // [eps^(1/4), 1/2]
  double A3 = 0.0;  // cap region, split at r = 1 (zero beyond: support in B1)
  double total() const { return A1 + A2 + A3; }
};

NormDecomposition family_norm_decomposition(const AdamsFamilyParams& params,
                                            const WeightProfile& profile,
                                            const QuadratureSpec& quad = {});

// u_eps / ||u_eps||; the seminorm of the result re-evaluates to 1 (1e-8).
RadialFunction normalized_family(const AdamsFamilyParams& params,
                                 const WeightProfile& profile,
                                 const QuadratureSpec& quad = {});

// (pi^2/2) eps ((e^4/eps)^(alpha/alpha_beta) - 1)
double blowup_lower_bound(double alpha, double beta, double epsilon);

enum class Verdict { Bounded, Divergent, Inconclusive };

struct SweepCell {
  double alpha = 0.0;
  double epsilon = 0.0;
  double value = 0.0;
  bool overflow = false;
  double lower_bound = 0.0;
  double family_norm = 0.0;  // ||u_eps|| for the record
};

struct SweepReport {
  struct PerAlpha {
    double alpha = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<SweepCell> cells;
  };
  std::vector<PerAlpha> rows;
};

// Evaluates the exponential functional on the family across the eps sweep and
// classifies each alpha: Bounded when the values plateau (last/first <= 2),
// Divergent when they grow monotonically and dominate the closed-form lower
// bound at every eps (overflow counts as divergence evidence).
// By default the raw family u_eps is used: its height is calibrated so that
// the inner-ball contribution reproduces the closed-form bound exactly, while
// at numerically reachable eps the norm ||u_eps|| is still far from 1 and
// normalizing would suppress the growth entirely (see the report's norms).
// Default eps ladder for the sweep. Near beta = 1 the height correction
// (1 + 2/L)^(2/(1-beta)) decays slowly in L = log(e^4/eps), and the
// supercritical growth only emerges past its crossover, so large beta needs a
// much deeper ladder (still well inside double precision).
std::vector<double> default_epsilon_ladder(double beta);

SweepReport dichotomy_sweep(const std::vector<double>& alphas, double beta,
                            const WeightProfile& profile,
                            const std::vector<double>& epsilons,
                            const QuadratureSpec& quad = {},
                            bool normalized = false);

}  // namespace wadams
