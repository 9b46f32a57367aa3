#pragma once
// Mountain-pass solver for  Lap(w_beta Lap u) = f(u)  on radial R^4:
// minimize-maximize the energy  I(v) = (1/2)||v||_w^2 - int F(v) dx  over a
// C^1 Hermite-cubic finite-element space on [0, R], locate the pass level by
// path deformation from 0 to a negative-energy endpoint, and polish the pass
// point with a damped Newton iteration in the ||.||_w geometry.
//
// Boundary handling: u'(0) = 0 is imposed; at the outer end the last node is
// tied to a single amplitude b through the biharmonic-in-R^4 tail u = b/r^2
// (which has zero Laplacian, hence zero seminorm cost), and the nonlinear
// term integrates F(b/r^2) beyond R. A clamped u(R) = u'(R) = 0 variant is
// kept for comparison; the tail element removes the O(1/R) truncation drift.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wadams/nonlinearity.hpp"
#include "wadams/radial_core.hpp"

namespace wadams {

struct FemSpace {
  std::vector<double> nodes;  // 0 = r_0 < ... < r_k = 1 < ... < r_{N-1} = R
  double R = 20.0;
  bool tail_element = true;

  // Uniform elements on [0,1], geometric on [1,R]; r = 1 is always a node.
  static FemSpace make(double R = 20.0, int n_inner = 40, int n_outer = 120,
                       bool tail_element = true);
  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_full() const { return 2 * n_nodes(); }   // (value, slope) per node
  int n_reduced() const;                          // after constraints
};

struct DiscreteState {
  Eigen::VectorXd coeffs;  // reduced coordinates
  double energy = 0.0;
  double grad_norm = 0.0;  // ||gradient||_w (Riesz norm)
};

struct SolveConfig {
  GrowthParams growth;
  WeightProfile profile;
  double R = 20.0;
  int n_inner = 40, n_outer = 120;
  bool tail_element = true;
  int path_resolution = 64;
  double tol = 1e-6;          // termination: Riesz gradient norm
  int max_iterations = 400;
  int gauss_points = 8;       // per element
  unsigned long seed = 12345;
  QuadratureSpec quad;
  bool valid(std::string* why = nullptr) const;
};

// Precomputed discrete operator: the weighted-seminorm Gram matrix in reduced
// coordinates, its factorization, and the full<->reduced transformation.
class Operator {
 public:
  Operator(const FemSpace& space, const WeightProfile& profile,
           const GrowthParams& growth, int gauss_points,
           const QuadratureSpec& quad);

  const FemSpace& space() const { return space_; }
  const Eigen::MatrixXd& K() const { return K_; }  // reduced Gram matrix

  // u(r), u'(r), Lap u(r) of the FE function with reduced coordinates c
  double value_at(const Eigen::VectorXd& c, double r) const;
  double laplacian_at(const Eigen::VectorXd& c, double r) const;

  double seminorm_sq(const Eigen::VectorXd& c) const;  // c^T K c
  double energy(const Eigen::VectorXd& c) const;       // +inf on F overflow
  // Euclidean gradient of the energy in reduced coordinates: K c - load(f(u))
  Eigen::VectorXd euclidean_gradient(const Eigen::VectorXd& c) const;
  // Riesz representative w with K w = euclidean_gradient; ||w||_w is the
  // residual the solver drives to zero
  Eigen::VectorXd riesz_gradient(const Eigen::VectorXd& c,
                                 double* norm = nullptr) const;
  // Hessian K - J(f'(u)) in reduced coordinates (for the Newton polish)
  Eigen::MatrixXd hessian(const Eigen::VectorXd& c) const;

  // nodal interpolation (values + slopes) of a smooth profile
  Eigen::VectorXd interpolate(const std::function<double(double)>& g,
                              const std::function<double(double)>& gprime) const;
  // solution as a sampled-and-extended radial profile for cross-module use
  RadialFunction to_radial(const Eigen::VectorXd& c) const;
  // min nodal value (nonnegativity certificate input)
  double min_nodal_value(const Eigen::VectorXd& c) const;
  // clamp negative nodal values to zero (slopes at clamped nodes zeroed)
  Eigen::VectorXd truncate_negative(const Eigen::VectorXd& c) const;

  int dim() const { return static_cast<int>(K_.rows()); }
  const Eigen::VectorXd& scale() const { return D_; }  // equilibration

 private:
  FemSpace space_;
  WeightProfile profile_;
  GrowthParams growth_;
  int gauss_ = 8;
  QuadratureSpec quad_;
  Eigen::MatrixXd K_;
  // diagonal equilibration D K D tames the 4th-order stiffness conditioning;
  // Riesz solves go through the scaled factorization + iterative refinement
  Eigen::VectorXd D_;
  Eigen::LDLT<Eigen::MatrixXd> K_solver_;
  Eigen::VectorXd solve_K(const Eigen::VectorXd& rhs) const;
  Eigen::VectorXd load_vector(const Eigen::VectorXd& c) const;
  friend struct GeometryProbe;
};

struct GeometryProbe {
  double rho0 = 0.0;      // (alpha_beta / (alpha (1+q)))^((1-beta)/2), halved
                          // until the sphere energy is positive (<= 20 times)
  double tau = 0.0;       // empirical inf of energy on ||u||_w = rho0
  Eigen::VectorXd e0;     // endpoint with negative energy (doubling search)
  double e0_energy = 0.0;
  bool ok = false;
};

GeometryProbe mountain_pass_geometry_probe(const Operator& op,
                                           const SolveConfig& config,
                                           const Eigen::VectorXd& direction);

struct IterationRecord {
  int iter = 0;
  double energy = 0.0;
  double residual = 0.0;
  double norm = 0.0;  // ||u_k||_w, the observational PS dashboard
};

struct SolveReport {
  DiscreteState solution;
  double m_num = 0.0;
  double residual = 0.0;
  double m_star_value = 0.0;
  bool converged = false;
  bool geometry_ok = false;
  bool level_below_mstar = false;
  bool nonneg_ok = false;
  bool nehari_ok = false;
  double nehari_defect = 0.0;  // relative
  double min_nodal = 0.0;
  double rho0 = 0.0, tau = 0.0;
  std::vector<IterationRecord> trace;
  bool certified() const {
    return converged && geometry_ok && level_below_mstar && nonneg_ok &&
           nehari_ok && m_num > 0.0;
  }
};

SolveReport mountain_pass_solve(const SolveConfig& config);

// Cross-check: maximize I(t u) over t > 0 along the solution direction; an
// independent route to the level that exposes discretization bias.
double nehari_level(const Operator& op, const Eigen::VectorXd& u);

struct VerifyRecord {
  bool weak_identity_ok = false;
  double max_weak_defect = 0.0;  // over 10 random directions, relative
  bool flags_ok_refined_quadrature = false;
  bool mesh_refinement_ok = false;
  double m_refined = 0.0;   // 2x elements
  bool domain_growth_ok = false;
  double m_wide = 0.0;      // R doubled
  bool certified = false;
};

VerifyRecord verify_solution(const SolveReport& report,
                             const SolveConfig& config);

}  // namespace wadams
