#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "wadams/radial_core.hpp"

using namespace wadams;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// u(r) = A exp(-a r^2) with its exact radial Laplacian in R^4
RadialFunction gaussian(double A, double a, double decay = 6.0) {
  Piece p;
  p.r_lo = 0.0;
  p.r_hi = kInf;
  p.value = [=](double r) { return A * std::exp(-a * r * r); };
  p.derivative = [=](double r) { return -2.0 * A * a * r * std::exp(-a * r * r); };
  p.laplacian = [=](double r) {
    return A * std::exp(-a * r * r) * (4.0 * a * a * r * r - 8.0 * a);
  };
  return RadialFunction::closed_form({p}, decay);
}

}  // namespace

TEST_CASE("geometric grid contains the kink radius") {
  RadialGrid g = RadialGrid::make(1e-4, 1e3, 12);
  bool has_one = false;
  for (double r : g.nodes) has_one = has_one || std::abs(r - 1.0) < 1e-14;
  CHECK(has_one);
  for (std::size_t i = 1; i < g.nodes.size(); ++i)
    CHECK(g.nodes[i] > g.nodes[i - 1]);
  CHECK(g.nodes.front() <= 1e-4);
  CHECK(g.nodes.back() >= 1e3);
}

TEST_CASE("volume integral of a Gaussian") {
  // 2 pi^2 int_0^inf e^(-r^2) r^3 dr = 2 pi^2 * 1/2 = pi^2
  QuadResult q = integrate_radial(gaussian(1.0, 1.0));
  CHECK(q.converged);
  CHECK(q.value == doctest::Approx(kPi * kPi).epsilon(1e-9));
}

TEST_CASE("Lp norm of a Gaussian against the closed form") {
  // ||u||_p = (2 pi^2 / (2 p))^(1/p) for u = e^(-r^2):
  // int e^(-p r^2) r^3 dr = 1/(2 p^2)
  for (double p : {4.0, 6.0, 8.0}) {
    bool below = false;
    double v = lp_norm(gaussian(1.0, 1.0), p, 0.5, {}, &below);
    double expect = std::pow(kPi * kPi / (p * p), 1.0 / p);
    CHECK(v == doctest::Approx(expect).epsilon(1e-8));
    CHECK_FALSE(below);  // embedding range starts at 2/(1-beta) = 4
  }
  bool below = false;
  lp_norm(gaussian(1.0, 1.0), 3.0, 0.5, {}, &below);
  CHECK(below);
}

TEST_CASE("weighted seminorm agrees with a direct weighted integral") {
  WeightProfile profile;
  profile.beta = 0.5;
  profile.chi = ChiSpec::power(3.0);
  RadialFunction u = gaussian(1.3, 0.7);
  double sn = weighted_seminorm(u, profile);

  // independent route: integrate w(r) (Lap u)^2 as a plain radial profile
  Piece p;
  p.r_lo = 0.0;
  p.r_hi = kInf;
  p.value = [&](double r) {
    double lap = u.laplacian(r);
    return profile.eval(r) * lap * lap;
  };
  // (Lap u)^2 decays like a Gaussian; chi adds a cubic factor only
  QuadResult q = integrate_radial(RadialFunction::closed_form({p}, 6.0));
  CHECK(sn == doctest::Approx(std::sqrt(q.value)).epsilon(1e-7));
  CHECK(sn > 0.0);
}

TEST_CASE("sampled Laplacian matches the closed form away from the ends") {
  RadialGrid g = RadialGrid::make(1e-3, 1e2, 40);
  RadialFunction u0 = gaussian(1.0, 1.0);
  std::vector<double> vals;
  for (double r : g.nodes) vals.push_back(u0.value(r));
  RadialFunction us = RadialFunction::sampled(g, vals, 6.0);
  RadialFunction lap = radial_laplacian(us);
  for (double r : {0.3, 0.7, 1.5, 2.5}) {
    CHECK(lap.value(r) ==
          doctest::Approx(u0.laplacian(r)).epsilon(1e-3));
  }
}

TEST_CASE("sharp exponent values") {
  double ab = alpha_beta(0.5);
  CHECK(ab == doctest::Approx(64.0 * std::pow(kPi, 4)).epsilon(1e-12));
  // the base 8 pi^2 (1-beta) stays > e here, so the exponent 1/(1-beta)
  // makes alpha_beta grow with beta
  CHECK(alpha_beta(0.25) < alpha_beta(0.5));
  CHECK(alpha_beta(0.5) < alpha_beta(0.75));
}

TEST_CASE("exponential functional vs truncated series") {
  RadialFunction u = gaussian(1.1, 0.9);
  double alpha = 2.0, beta = 0.5;
  AdamsValue a = adams_functional(u, alpha, beta);
  CHECK_FALSE(a.overflow);
  SeriesValue s = adams_functional_series(u, alpha, beta, 40);
  CHECK(std::abs(a.value - s.value) <= s.tail_bound + 1e-8);
  CHECK(s.tail_bound < 1e-8);  // alpha sup|u|^4 is tiny compared to K
}

TEST_CASE("exponential functional flags overflow for huge amplitudes") {
  AdamsValue a = adams_functional(gaussian(50.0, 1.0), 1.0, 0.5);
  CHECK(a.overflow);
  CHECK(a.blowup_radius >= 0.0);
}

TEST_CASE("concentration limit") {
  // 1/(1 - t^2)^(1/(1-beta)) at t = 0.5, beta = 0.5: (4/3)^2
  CHECK(concentration_limit_pbeta(0.5, 0.5) ==
        doctest::Approx(16.0 / 9.0).epsilon(1e-12));
  CHECK(std::isinf(concentration_limit_pbeta(1.0, 0.5)));
  CHECK(concentration_limit_pbeta(0.0, 0.5) == doctest::Approx(1.0));
}
