#include "wadams/radial_lemma.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "wadams/parallel.hpp"

namespace wadams {
namespace {

constexpr double PI = std::numbers::pi;

double tail_energy_T(const RadialFunction& u, const WeightProfile& profile,
                     const QuadratureSpec& quad) {
  const double a_t = (profile.chi.kind == ChiSpec::Kind::Power)
                         ? profile.chi.a
                         : profile.chi.tail_exponent;
  auto f = [&](double r) {
    double l = u.laplacian(r);
    return l * l * profile.chi.eval(r) * r * r * r;
  };
  double end = u.support_end();
  if (std::isfinite(end)) {
    if (end <= 1.0) return 0.0;
    return 2.0 * PI * PI * integrate(f, 1.0, end, quad).value;
  }
  double decay = 2.0 * (u.decay_exponent() + 2.0) - a_t - 3.0;
  return 2.0 * PI * PI * integrate_power_tail(f, 1.0, decay, quad).value;
}

double inner_I1(const ChiSpec& chi, double r, const QuadratureSpec& quad) {
  if (chi.kind == ChiSpec::Kind::Power) return std::pow(r, -chi.a) / chi.a;
  return integrate_power_tail(
             [&](double y) { return 1.0 / (chi.eval(y) * y); }, r,
             1.0 + chi.tail_exponent, quad)
      .value;
}

double inner_I2(const ChiSpec& chi, double r, const QuadratureSpec& quad) {
  if (r <= 1.0) return 0.0;
  if (chi.kind == ChiSpec::Kind::Power) {
    const double a = chi.a;
    double v = (std::abs(a - 2.0) < 1e-12)
                   ? std::log(r)
                   : (1.0 - std::pow(r, 2.0 - a)) / (a - 2.0);
    return v / (r * r);
  }
  return integrate([&](double y) { return y / chi.eval(y); }, 1.0, r, quad)
             .value /
         (r * r);
}

double slope_at_one(const RadialFunction& u) {
  if (u.has_derivative()) return u.derivative(1.0);
  // 5-point central difference; u itself is smooth at r = 1
  const double h = 1e-4;
  return (u.value(1.0 - 2 * h) - 8 * u.value(1.0 - h) + 8 * u.value(1.0 + h) -
          u.value(1.0 + 2 * h)) /
         (12.0 * h);
}

}  // namespace

double radial_bound_rhs(const RadialFunction& u, const WeightProfile& profile,
                        double r, const LemmaConstants& constants,
                        const QuadratureSpec& quad) {
  if (r < 1.0) throw std::domain_error("the bound holds for r >= 1 only");
  double c2 = constants.c2;
  if (c2 < 0.0) c2 = std::abs(-2.0 * PI * slope_at_one(u));
  const double T = tail_energy_T(u, profile, quad);
  const double i1 = inner_I1(profile.chi, r, quad);
  const double i2 = inner_I2(profile.chi, r, quad);
  return (std::sqrt(2.0) * constants.c1 / (4.0 * PI)) * std::sqrt(T) *
             (std::sqrt(std::max(0.0, i1)) + std::sqrt(std::max(0.0, i2))) +
         c2 / (r * r);
}

MarginReport verify_radial_lemma(const RadialFunction& u,
                                 const WeightProfile& profile,
                                 const std::vector<double>& radii, double tol,
                                 const QuadratureSpec& quad) {
  LemmaConstants constants;
  constants.c2 = std::abs(-2.0 * PI * slope_at_one(u));
  MarginReport rep;
  rep.rows.resize(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    MarginRow row;
    row.r = radii[i];
    row.lhs = std::abs(u.value(radii[i]));
    row.rhs = radial_bound_rhs(u, profile, radii[i], constants, quad);
    row.margin = row.rhs - row.lhs;
    rep.rows[i] = row;
  });
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& row : rep.rows)
    rep.min_margin = std::min(rep.min_margin, row.margin);
  rep.pass = rep.min_margin >= -tol;
  return rep;
}

double half_space_transform_check(const RadialFunction& u,
                                  const std::vector<double>& s_samples) {
  if (!u.has_laplacian())
    throw std::invalid_argument("transform check needs the Laplacian");
  // 7-point, 6th-order second derivative: (2,-27,270,-490,270,-27,2)/(180 h^2)
  static const double c[7] = {2, -27, 270, -490, 270, -27, 2};
  double worst = 0.0;
  for (double s : s_samples) {
    if (!(s > 0.0 && s <= 1.0))
      throw std::domain_error("samples must lie in (0,1]");
    const double h = 0.01 * s;
    double acc = 0.0;
    for (int j = -3; j <= 3; ++j) {
      double sj = s + j * h;
      acc += c[j + 3] * 4.0 * PI * u.value(std::pow(sj, -0.5));
    }
    double wpp = acc / (180.0 * h * h);
    double target = PI * std::pow(s, -3.0) * u.laplacian(std::pow(s, -0.5));
    double res = std::abs(wpp - target) / (1.0 + std::abs(wpp));
    worst = std::max(worst, res);
  }
  return worst;
}

std::vector<RadialFunction> random_radial_corpus(int n, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.2, 1.5), rate(0.3, 2.0),
      curv(0.5, 2.0), coin(0.0, 1.0);
  std::uniform_int_distribution<int> mdist(2, 4);
  std::vector<RadialFunction> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    double A = amp(rng), a = rate(rng);
    double B = amp(rng), cc = curv(rng);
    int m = mdist(rng);
    double mix = coin(rng);
    if (mix < 0.3) B = 0.0;       // pure Gaussian
    else if (mix > 0.7) A = 0.0;  // pure rational decay
    Piece p;
    p.r_lo = 0.0;
    p.r_hi = std::numeric_limits<double>::infinity();
    p.value = [=](double r) {
      return A * std::exp(-a * r * r) + B * std::pow(1.0 + cc * r * r, -m);
    };
    p.derivative = [=](double r) {
      return A * std::exp(-a * r * r) * (-2.0 * a * r) +
             B * (-2.0 * m * cc * r) * std::pow(1.0 + cc * r * r, -m - 1);
    };
    p.laplacian = [=](double r) {
      double g = A * std::exp(-a * r * r) * (4.0 * a * a * r * r - 8.0 * a);
      double q = 1.0 + cc * r * r;
      double rat = B * (-8.0 * m * cc * std::pow(q, -m - 1) +
                        4.0 * m * (m + 1) * cc * cc * r * r *
                            std::pow(q, -m - 2));
      return g + rat;
    };
    out.push_back(RadialFunction::closed_form({p}, 2.0 * m));
  }
  return out;
}

}  // namespace wadams
