#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "wadams/solver.hpp"

using namespace wadams;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

SolveConfig default_config() {
  SolveConfig c;
  c.profile.beta = 0.5;
  c.profile.chi = ChiSpec::power(3.0);
  return c;
}

RadialFunction gaussian(double A, double a) {
  Piece p;
  p.r_lo = 0.0;
  p.r_hi = kInf;
  p.value = [=](double r) { return A * std::exp(-a * r * r); };
  p.derivative = [=](double r) { return -2.0 * A * a * r * std::exp(-a * r * r); };
  p.laplacian = [=](double r) {
    return A * std::exp(-a * r * r) * (4.0 * a * a * r * r - 8.0 * a);
  };
  return RadialFunction::closed_form({p}, 6.0);
}

}  // namespace

TEST_CASE("finite element space layout") {
  FemSpace s = FemSpace::make(20.0, 40, 120, true);
  CHECK(s.n_nodes() == 161);
  CHECK(s.nodes.front() == doctest::Approx(0.0));
  CHECK(s.nodes.back() == doctest::Approx(20.0));
  bool has_one = false;
  for (double r : s.nodes) has_one = has_one || std::abs(r - 1.0) < 1e-12;
  CHECK(has_one);
  // u'(0) removed, last node (value, slope) tied to one tail amplitude
  CHECK(s.n_reduced() == 2 * 161 - 3 + 1);
  FemSpace clamped = FemSpace::make(20.0, 40, 120, false);
  CHECK(clamped.n_reduced() == 2 * 161 - 3);
}

TEST_CASE("discrete quadratic form matches the weighted seminorm") {
  SolveConfig c = default_config();
  FemSpace space = FemSpace::make(c.R, c.n_inner, c.n_outer, c.tail_element);
  Operator op(space, c.profile, c.growth, c.gauss_points, c.quad);

  RadialFunction g = gaussian(1.0, 1.0);
  Eigen::VectorXd v = op.interpolate(
      [&](double r) { return g.value(r); },
      [&](double r) { return g.derivative(r); });
  double discrete = std::sqrt(op.seminorm_sq(v));
  double exact = weighted_seminorm(g, c.profile);
  CHECK(discrete == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("operator basics") {
  SolveConfig c = default_config();
  FemSpace space = FemSpace::make(c.R, c.n_inner, c.n_outer, c.tail_element);
  Operator op(space, c.profile, c.growth, c.gauss_points, c.quad);

  Eigen::VectorXd zero = Eigen::VectorXd::Zero(op.dim());
  CHECK(op.energy(zero) == doctest::Approx(0.0));
  CHECK(op.seminorm_sq(zero) == doctest::Approx(0.0));

  // K is symmetric positive semidefinite
  const Eigen::MatrixXd& K = op.K();
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * K.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  CHECK(es.eigenvalues().minCoeff() >= -1e-9 * es.eigenvalues().maxCoeff());

  // truncate_negative clamps and certifies
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(op.dim());
  for (int i = 0; i < v.size(); ++i) v[i] = nd(rng);
  Eigen::VectorXd t = op.truncate_negative(v);
  CHECK(op.min_nodal_value(t) >= 0.0);
}

TEST_CASE("energy gradient passes a finite-difference check") {
  SolveConfig c = default_config();
  FemSpace space = FemSpace::make(c.R, c.n_inner, c.n_outer, c.tail_element);
  Operator op(space, c.profile, c.growth, c.gauss_points, c.quad);

  RadialFunction g = gaussian(1.0, 1.0);
  Eigen::VectorXd base = op.interpolate(
      [&](double r) { return g.value(r); },
      [&](double r) { return g.derivative(r); });

  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  const double h = 1e-4;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd dir(op.dim());
    for (int i = 0; i < dir.size(); ++i) dir[i] = nd(rng);
    dir /= std::sqrt(op.seminorm_sq(dir));
    Eigen::VectorXd state = base * (0.5 + 0.3 * trial);
    double fd = (op.energy(state + h * dir) - op.energy(state - h * dir)) /
                (2.0 * h);
    double an = op.euclidean_gradient(state).dot(dir);
    CHECK(an == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("mountain-pass geometry probe") {
  SolveConfig c = default_config();
  FemSpace space = FemSpace::make(c.R, c.n_inner, c.n_outer, c.tail_element);
  Operator op(space, c.profile, c.growth, c.gauss_points, c.quad);
  RadialFunction g = gaussian(1.0, 1.0);
  Eigen::VectorXd dir = op.interpolate(
      [&](double r) { return g.value(r); },
      [&](double r) { return g.derivative(r); });
  GeometryProbe probe = mountain_pass_geometry_probe(op, c, dir);
  CHECK(probe.ok);
  // rho0 starts at (alpha_beta/(alpha(1+q)))^((1-beta)/2) = (alpha_beta/10)^(1/4)
  CHECK(probe.rho0 ==
        doctest::Approx(std::pow(alpha_beta(0.5) / 10.0, 0.25)).epsilon(1e-10));
  CHECK(probe.tau > 0.0);
  CHECK(probe.e0_energy < 0.0);
}

TEST_CASE("default solve converges to a certified level") {
  SolveConfig c = default_config();
  SolveReport rep = mountain_pass_solve(c);
  CHECK(rep.converged);
  CHECK(rep.residual <= c.tol);
  CHECK(rep.m_num > 0.0);
  CHECK(rep.m_num < 4.0 * kPi * kPi);
  CHECK(rep.m_star_value == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  CHECK(rep.level_below_mstar);
  CHECK(rep.min_nodal >= -1e-8);
  CHECK(rep.nonneg_ok);
  CHECK(rep.nehari_ok);
  CHECK(rep.nehari_defect <= 1e-5);
  CHECK(rep.certified());
  CHECK_FALSE(rep.trace.empty());
  // frozen regression value for the default discretization
  CHECK(rep.m_num == doctest::Approx(35.550843).epsilon(1e-4));

  // the Nehari-ray level agrees with the converged level
  FemSpace space = FemSpace::make(c.R, c.n_inner, c.n_outer, c.tail_element);
  Operator op(space, c.profile, c.growth, c.gauss_points, c.quad);
  double level = nehari_level(op, rep.solution.coeffs);
  CHECK(level == doctest::Approx(rep.m_num).epsilon(1e-5));
}

TEST_CASE("certification rejects the trivial state") {
  SolveReport rep;
  rep.converged = true;
  rep.geometry_ok = true;
  rep.level_below_mstar = true;
  rep.nonneg_ok = true;
  rep.nehari_ok = true;
  rep.m_num = 0.0;  // u = 0 sits at energy zero
  CHECK_FALSE(rep.certified());
}

TEST_CASE("iteration cap reports non-convergence") {
  SolveConfig c = default_config();
  c.max_iterations = 1;
  SolveReport rep = mountain_pass_solve(c);
  CHECK_FALSE(rep.converged);
  CHECK_FALSE(rep.certified());
}
