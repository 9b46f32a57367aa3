#include "wadams/extremals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wadams/parallel.hpp"

namespace wadams {
namespace {

constexpr double PI = std::numbers::pi;
constexpr double E = std::numbers::e;

struct FamilyScales {
  double A;      // sharp exponent
  double L;      // log(e^4/eps)
  double r0;     // eps^(1/4)
  double P;      // inner r-term denominator
  double Q;      // inner constant-term denominator
  double D;      // middle denominator ((A/16) L)^((1-b)/2)
  double top;    // inner leading constant (L/A)^((1-b)/2)
};

FamilyScales scales(const AdamsFamilyParams& p) {
  const double b = p.beta, ob = 1.0 - b;
  FamilyScales s;
  s.A = alpha_beta(b);
  s.L = std::log(std::pow(E, 4) / p.epsilon);
  s.r0 = std::pow(p.epsilon, 0.25);
  s.P = 2.0 * std::pow(s.A * p.epsilon / 4.0, ob / 2.0) *
        std::pow(s.L / 4.0, (1.0 + b) / 2.0);
  s.Q = 2.0 * std::pow(s.A / 4.0, ob / 2.0) *
        std::pow(s.L / 4.0, (1.0 + b) / 2.0);
  s.D = std::pow(s.A / 16.0 * s.L, ob / 2.0);
  s.top = std::pow(s.L / s.A, ob / 2.0);
  return s;
}

// quintic cap coefficients: value/slope/curvature at 1/2 from the middle
// piece, value/slope/curvature zero at 1
Eigen::Matrix<double, 6, 1> cap_coefficients(const AdamsFamilyParams& p) {
  const double b = p.beta, ob = 1.0 - b;
  const FamilyScales s = scales(p);
  const double g = std::log(2.0 * E);  // log(e/r) at r = 1/2
  const double v = std::pow(g, ob) / s.D;
  const double sl = -2.0 * ob * std::pow(g, -b) / s.D;
  // u_mid'' at 1/2: -ob r^-2 g^-b (b/g - 1) / D with r = 1/2
  const double k2 = -ob * 4.0 * std::pow(g, -b) * (b / g - 1.0) / s.D;

  Eigen::Matrix<double, 6, 6> M;
  Eigen::Matrix<double, 6, 1> rhs;
  auto fill = [&](int row, double r, int deriv) {
    for (int j = 0; j < 6; ++j) {
      double c = 1.0;
      int e = j;
      for (int d = 0; d < deriv; ++d) {
        c *= e;
        e -= 1;
      }
      M(row, j) = (e < 0 && c == 0.0) ? 0.0 : c * std::pow(r, std::max(e, 0));
    }
  };
  fill(0, 0.5, 0);
  fill(1, 0.5, 1);
  fill(2, 0.5, 2);
  fill(3, 1.0, 0);
  fill(4, 1.0, 1);
  fill(5, 1.0, 2);
  rhs << v, sl, k2, 0.0, 0.0, 0.0;
  return M.fullPivLu().solve(rhs);
}

double poly_eval(const Eigen::Matrix<double, 6, 1>& c, double r, int deriv) {
  double acc = 0.0;
  for (int j = 5; j >= 0; --j) {
    double coef = c[j];
    int e = j;
    for (int d = 0; d < deriv; ++d) {
      coef *= e;
      e -= 1;
    }
    if (e < 0) continue;
    acc += coef * std::pow(r, e);
  }
  return acc;
}

RadialFunction scale_radial(const RadialFunction& u, double factor) {
  std::vector<Piece> out;
  for (const Piece& p : u.pieces()) {
    Piece q;
    q.r_lo = p.r_lo;
    q.r_hi = p.r_hi;
    auto val = p.value;
    q.value = [val, factor](double r) { return factor * val(r); };
    if (p.laplacian) {
      auto lap = p.laplacian;
      q.laplacian = [lap, factor](double r) { return factor * lap(r); };
    }
    if (p.derivative) {
      auto der = p.derivative;
      q.derivative = [der, factor](double r) { return factor * der(r); };
    }
    out.push_back(q);
  }
  return RadialFunction::closed_form(std::move(out), u.decay_exponent());
}

}  // namespace

AdamsFamilyParams AdamsFamilyParams::from_n(int n, double beta) {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  AdamsFamilyParams p;
  p.epsilon = 1.0 / n;
  p.beta = beta;
  return p;
}

bool AdamsFamilyParams::valid() const {
  return beta > 0.0 && beta < 1.0 && epsilon > 0.0 &&
         epsilon < std::pow(E, 4) && std::pow(epsilon, 0.25) < 0.5;
}

RadialFunction adams_family(const AdamsFamilyParams& params) {
  if (!params.valid()) throw std::invalid_argument("invalid family params");
  const double b = params.beta, ob = 1.0 - b;
  const FamilyScales s = scales(params);
  const auto cap = cap_coefficients(params);

  Piece inner;
  inner.r_lo = 0.0;
  inner.r_hi = s.r0;
  inner.value = [s, ob](double r) {
    return s.top - std::pow(r, 2.0 * ob) / s.P + 1.0 / s.Q;
  };
  inner.derivative = [s, ob](double r) {
    return -2.0 * ob * std::pow(r, 2.0 * ob - 1.0) / s.P;
  };
  inner.laplacian = [s, ob, b](double r) {
    return -4.0 * ob * (2.0 - b) * std::pow(r, -2.0 * b) / s.P;
  };

  Piece middle;
  middle.r_lo = s.r0;
  middle.r_hi = 0.5;
  middle.value = [s, ob](double r) {
    return std::pow(std::log(E / r), ob) / s.D;
  };
  middle.derivative = [s, ob, b](double r) {
    return -ob * std::pow(std::log(E / r), -b) / (r * s.D);
  };
  middle.laplacian = [s, ob, b](double r) {
    const double g = std::log(E / r);
    return -ob * std::pow(g, -b) * (2.0 + b / g) / (r * r * s.D);
  };

  Piece capp;
  capp.r_lo = 0.5;
  capp.r_hi = 1.0;
  capp.value = [cap](double r) { return poly_eval(cap, r, 0); };
  capp.derivative = [cap](double r) { return poly_eval(cap, r, 1); };
  capp.laplacian = [cap](double r) {
    return poly_eval(cap, r, 2) + 3.0 * poly_eval(cap, r, 1) / r;
  };

  // construction-time continuity checks (1e-9 relative)
  auto rel = [](double x, double y) {
    return std::abs(x - y) / std::max(1e-30, std::max(std::abs(x), std::abs(y)));
  };
  if (rel(inner.value(s.r0), middle.value(s.r0)) > 1e-9)
    throw std::runtime_error("family discontinuous at eps^(1/4)");
  if (rel(middle.value(0.5), capp.value(0.5)) > 1e-9)
    throw std::runtime_error("family discontinuous at 1/2");

  return RadialFunction::closed_form({inner, middle, capp}, 2.0);
}

double printed_laplacian_discrepancy(const AdamsFamilyParams& params) {
  const double b = params.beta, ob = 1.0 - b;
  const FamilyScales s = scales(params);
  const RadialFunction u = adams_family(params);
  const double L1 = std::log(1.0 / params.epsilon);  // printed: log(1/eps)
  const double P1 = std::pow(s.A * params.epsilon / 4.0, ob / 2.0) *
                    std::pow(L1 / 4.0, (1.0 + b) / 2.0);
  const double D1 = std::pow(s.A / 16.0 * L1, ob / 2.0);
  double worst = 0.0;
  for (int i = 1; i <= 8; ++i) {  // inner samples
    double r = s.r0 * i / 9.0;
    double printed = -ob * (4.0 - 2.0 * b) * std::pow(r, -2.0 * b) / P1;
    double sym = u.laplacian(r);
    worst = std::max(worst, std::abs(printed - sym) / std::abs(sym));
  }
  for (int i = 1; i <= 8; ++i) {  // middle samples, away from r = 1
    double r = s.r0 + (0.5 - s.r0) * i / 9.0;
    double g1 = std::log(1.0 / r);  // printed: log(1/r)
    double printed =
        ob / D1 * std::pow(g1, -b) / (r * r) * (-b / g1 - 2.0);
    double sym = u.laplacian(r);
    worst = std::max(worst, std::abs(printed - sym) / std::abs(sym));
  }
  return worst;
}

NormDecomposition family_norm_decomposition(const AdamsFamilyParams& params,
                                            const WeightProfile& profile,
                                            const QuadratureSpec& quad) {
  if (std::abs(profile.beta - params.beta) > 1e-14)
    throw std::invalid_argument("profile beta must match family beta");
  const FamilyScales s = scales(params);
  const RadialFunction u = adams_family(params);
  auto piece_energy = [&](double lo, double hi) {
    return 2.0 * PI * PI *
           integrate(
               [&](double r) {
                 double l = u.laplacian(r);
                 return profile.eval(r) * l * l * r * r * r;
               },
               lo, hi, quad)
               .value;
  };
  NormDecomposition d;
  d.A1 = piece_energy(0.0, s.r0);
  d.A2 = piece_energy(s.r0, 0.5);
  // support ends at 1, so the chi part of A3 is an exact zero
  d.A3 = piece_energy(0.5, 1.0) + 0.0;
  return d;
}

RadialFunction normalized_family(const AdamsFamilyParams& params,
                                 const WeightProfile& profile,
                                 const QuadratureSpec& quad) {
  NormDecomposition d = family_norm_decomposition(params, profile, quad);
  double norm = std::sqrt(d.total());
  if (!(norm > 0.0)) throw std::runtime_error("family norm vanished");
  return scale_radial(adams_family(params), 1.0 / norm);
}

double blowup_lower_bound(double alpha, double beta, double epsilon) {
  if (!(alpha > 0.0 && epsilon > 0.0))
    throw std::invalid_argument("alpha, epsilon must be positive");
  const double A = alpha_beta(beta);
  return 0.5 * PI * PI * epsilon *
         (std::pow(std::pow(E, 4) / epsilon, alpha / A) - 1.0);
}

std::vector<double> default_epsilon_ladder(double beta) {
  if (beta < 0.7) return {1e-2, 1e-4, 1e-6, 1e-8};
  return {1e-10, 1e-14, 1e-18};
}

SweepReport dichotomy_sweep(const std::vector<double>& alphas, double beta,
                            const WeightProfile& profile,
                            const std::vector<double>& epsilons,
                            const QuadratureSpec& quad, bool normalized) {
  if (alphas.empty() || epsilons.empty())
    throw std::invalid_argument("empty sweep list");
  std::vector<double> eps = epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<double>());

  // family members and norms once per eps
  std::vector<double> norms(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) {
    AdamsFamilyParams p{eps[i], beta};
    norms[i] = std::sqrt(family_norm_decomposition(p, profile, quad).total());
  });

  SweepReport rep;
  rep.rows.resize(alphas.size());
  const std::size_t ne = eps.size();
  std::vector<SweepCell> cells(alphas.size() * ne);
  parallel_for(cells.size(), [&](std::size_t idx) {
    std::size_t ia = idx / ne, ie = idx % ne;
    AdamsFamilyParams p{eps[ie], beta};
    RadialFunction u = adams_family(p);
    if (normalized) u = scale_radial(u, 1.0 / norms[ie]);
    AdamsValue v = adams_functional(u, alphas[ia], beta, quad);
    SweepCell c;
    c.alpha = alphas[ia];
    c.epsilon = eps[ie];
    c.value = v.value;
    c.overflow = v.overflow;
    c.lower_bound = blowup_lower_bound(alphas[ia], beta, eps[ie]);
    c.family_norm = norms[ie];
    cells[idx] = c;
  });

  for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
    auto& row = rep.rows[ia];
    row.alpha = alphas[ia];
    row.cells.assign(cells.begin() + ia * ne, cells.begin() + (ia + 1) * ne);
    bool any_overflow = false, monotone = true, dominates = true;
    for (std::size_t ie = 0; ie < ne; ++ie) {
      const SweepCell& c = row.cells[ie];
      if (c.overflow) any_overflow = true;
      if (ie > 0 && !c.overflow && !row.cells[ie - 1].overflow &&
          c.value < row.cells[ie - 1].value)
        monotone = false;
      if (!c.overflow && c.value < c.lower_bound) dominates = false;
    }
    double first = row.cells.front().value, last = row.cells.back().value;
    if (!any_overflow && first > 0.0 && last / first <= 2.0)
      row.verdict = Verdict::Bounded;
    else if ((any_overflow || last / first > 2.0) && monotone && dominates)
      row.verdict = Verdict::Divergent;
    else
      row.verdict = Verdict::Inconclusive;
  }
  return rep;
}

}  // namespace wadams
