// Acceptance gate: one self-contained check per criterion, each printing a
// single [PASS]/[FAIL] line. Run all with no arguments or one criterion with
// --criterion N. Exit code is nonzero when any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "wadams/extremals.hpp"
#include "wadams/nonlinearity.hpp"
#include "wadams/radial_lemma.hpp"
#include "wadams/solver.hpp"
#include "wadams/weights.hpp"

using namespace wadams;

namespace {

constexpr double kPi = 3.14159265358979323846;

WeightProfile power_profile(double beta, double a) {
  WeightProfile p;
  p.beta = beta;
  p.chi = ChiSpec::power(a);
  return p;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 1. sharp-constant arithmetic at beta = 0.5 and in the beta -> 0 limit
Outcome criterion1() {
  double ab = alpha_beta(0.5);
  double exact = 64.0 * std::pow(kPi, 4);
  double rel_half = std::abs(ab - exact) / exact;

  double limit = 32.0 * kPi * kPi;
  double near0 = alpha_beta(1e-6);
  double rel_limit = std::abs(near0 - limit) / limit;

  Outcome o;
  o.pass = rel_half <= 1e-10 && rel_limit <= 1e-6;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "alpha_beta(0.5) rel err %.3e (<= 1e-10); "
                "alpha_beta(1e-6) vs 32 pi^2 rel err %.3e (<= 1e-6)",
                rel_half, rel_limit);
  o.detail = buf;
  return o;
}

// 2. extremal normalization: ||u_eps||^2 -> 1 along the eps ladder
Outcome criterion2() {
  WeightProfile profile = power_profile(0.5, 3.0);
  std::vector<double> eps = {1e-2, 1e-4, 1e-6, 1e-8};
  std::vector<double> corr;
  for (double e : eps) {
    AdamsFamilyParams p;
    p.epsilon = e;
    p.beta = 0.5;
    corr.push_back(std::abs(family_norm_decomposition(p, profile).total() - 1.0));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < corr.size(); ++i)
    decreasing = decreasing && corr[i] < corr[i - 1];
  bool small_final = corr.back() <= 0.05;

  // the correction is a power law in the log scale of the concentration,
  // L = log(e/eps^(1/4)); fit its decay exponent there
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double L = 1.0 + 0.25 * std::log(1.0 / eps[i]);
    double x = std::log(L), y = std::log(corr[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  double n = double(eps.size());
  double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  double target = 1.0 - 0.5;
  bool exponent_ok = std::abs(slope - target) <= 0.25 * target;

  Outcome o;
  o.pass = decreasing && small_final && exponent_ok;
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "|norm^2-1| over eps ladder: %.4g %.4g %.4g %.4g "
                "(decreasing=%d, final<=0.05:%d); fitted exponent %.4g vs %.2g "
                "(within 25%%:%d)",
                corr[0], corr[1], corr[2], corr[3], int(decreasing),
                int(small_final), slope, target, int(exponent_ok));
  o.detail = buf;
  return o;
}

// 3. dichotomy verdicts across three weights
Outcome criterion3() {
  Outcome o;
  o.pass = true;
  for (double beta : {0.25, 0.5, 0.75}) {
    // the admissible power window is max{2, 4(1-beta)} < a < 4, so the
    // quarter weight needs a steeper chi than the cubic one
    double a = beta < 0.5 ? 3.5 : 3.0;
    WeightProfile profile = power_profile(beta, a);
    double ab = alpha_beta(beta);
    auto rep = dichotomy_sweep({0.9 * ab, ab, 1.2 * ab}, beta, profile,
                               default_epsilon_ladder(beta));
    bool ok = rep.rows.size() == 3 &&
              rep.rows[0].verdict == Verdict::Bounded &&
              rep.rows[1].verdict == Verdict::Bounded &&
              rep.rows[2].verdict == Verdict::Divergent;
    for (const auto& c : rep.rows[2].cells)
      if (!c.overflow) ok = ok && c.value > c.lower_bound;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "beta=%.2f chi=y^%.1f %s; ", beta, a,
                  ok ? "B/B/D" : "WRONG");
    o.detail += buf;
    o.pass = o.pass && ok;
  }
  return o;
}

// 4. radial decay lemma on the random corpus + transform identity
Outcome criterion4() {
  WeightProfile profile = power_profile(0.5, 3.0);
  auto corpus = random_radial_corpus(20, 42);
  std::vector<double> radii = {1, 2, 5, 10, 100, 1000};
  double min_margin = std::numeric_limits<double>::infinity();
  bool bound_ok = true;
  for (const auto& u : corpus) {
    auto rep = verify_radial_lemma(u, profile, radii, 1e-8);
    bound_ok = bound_ok && rep.pass;
    min_margin = std::min(min_margin, rep.min_margin);
  }
  std::vector<double> s;
  for (int i = 1; i <= 12; ++i) s.push_back(i / 13.0);
  double worst_resid = 0.0;
  for (const auto& u : corpus)
    worst_resid = std::max(worst_resid, half_space_transform_check(u, s));
  Outcome o;
  o.pass = bound_ok && worst_resid <= 1e-8;
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "20-member corpus: min margin %.3e (bound ok:%d); transform "
                "residual %.3e (<= 1e-8)",
                min_margin, int(bound_ok), worst_resid);
  o.detail = buf;
  return o;
}

// 5. exponential functional vs its truncated series on bounded profiles
Outcome criterion5() {
  auto corpus = random_radial_corpus(10, 777);
  const double alpha = 2.0, beta = 0.5;
  const int K = 40;
  double worst_excess = -std::numeric_limits<double>::infinity();
  bool ok = true;
  for (const auto& u : corpus) {
    AdamsValue a = adams_functional(u, alpha, beta);
    SeriesValue sv = adams_functional_series(u, alpha, beta, K);
    if (a.overflow) {
      ok = false;
      continue;
    }
    double excess = std::abs(a.value - sv.value) - sv.tail_bound;
    worst_excess = std::max(worst_excess, excess);
    ok = ok && excess <= 1e-8;
  }
  Outcome o;
  o.pass = ok;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "10 profiles, K=40: worst |quad - series| - tail_bound = %.3e "
                "(<= 1e-8)",
                worst_excess);
  o.detail = buf;
  return o;
}

// 6. finite-difference gradient check on random discrete states
Outcome criterion6() {
  SolveConfig c;
  c.profile = power_profile(0.5, 3.0);
  FemSpace space = FemSpace::make(c.R, c.n_inner, c.n_outer, c.tail_element);
  Operator op(space, c.profile, c.growth, c.gauss_points, c.quad);

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> nd;
  const double h = 1e-4;
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd state(op.dim()), dir(op.dim());
    for (int i = 0; i < state.size(); ++i) state[i] = nd(rng);
    for (int i = 0; i < dir.size(); ++i) dir[i] = nd(rng);
    state *= 2.0 / std::sqrt(op.seminorm_sq(state));
    dir /= std::sqrt(op.seminorm_sq(dir));
    double fd = (op.energy(state + h * dir) - op.energy(state - h * dir)) /
                (2.0 * h);
    double an = op.euclidean_gradient(state).dot(dir);
    worst = std::max(worst, std::abs(an - fd) / std::max(1.0, std::abs(fd)));
  }
  Outcome o;
  o.pass = worst <= 1e-4;
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "10 random states, h=1e-4: worst relative error %.3e (<= 1e-4)",
                worst);
  o.detail = buf;
  return o;
}

// 7. mountain-pass certificates for the default configuration
Outcome criterion7() {
  SolveConfig c;
  c.profile = power_profile(0.5, 3.0);
  SolveReport rep = mountain_pass_solve(c);

  bool basic = rep.converged && rep.residual <= 1e-6 && rep.m_num > 0.0 &&
               rep.m_num < 4.0 * kPi * kPi && rep.min_nodal >= -1e-8 &&
               rep.nehari_defect <= 1e-5;
  bool verify_ok = false;
  double weak = std::numeric_limits<double>::quiet_NaN();
  double drift_mesh = std::numeric_limits<double>::quiet_NaN();
  double drift_dom = std::numeric_limits<double>::quiet_NaN();
  if (rep.converged) {
    VerifyRecord ver = verify_solution(rep, c);
    weak = ver.max_weak_defect;
    drift_mesh = std::abs(ver.m_refined - rep.m_num) / rep.m_num;
    drift_dom = std::abs(ver.m_wide - rep.m_num) / rep.m_num;
    verify_ok = ver.weak_identity_ok && weak <= 1e-5 &&
                drift_mesh <= 0.02 && drift_dom <= 0.02 && ver.certified;
  }
  Outcome o;
  o.pass = basic && verify_ok;
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "m=%.6f in (0, 4 pi^2=%.4f), residual %.2e, min nodal %.2e, "
                "nehari defect %.2e, weak defect %.2e, mesh drift %.4f, "
                "domain drift %.4f",
                rep.m_num, 4.0 * kPi * kPi, rep.residual, rep.min_nodal,
                rep.nehari_defect, weak, drift_mesh, drift_dom);
  o.detail = buf;
  return o;
}

// 8. nonlinearity certification and its negative control
Outcome criterion8() {
  GrowthParams g;
  auto samples = growth_samples(1e-4, 100.0, 400);
  bool f1 = check_F1(g, samples).pass();
  bool f2 = check_F2(g, 1.0, 1.0, growth_samples(1.0, 100.0, 200)).pass();
  F3Result f3 = check_F3(g, 50.0);
  double thr_err = std::abs(f3.kappa_threshold - 16.0 / std::exp(4.0));
  GrowthParams bad = g;
  bad.q = bad.p;
  bool control_fails = !check_F1(bad, samples).pass();

  Outcome o;
  o.pass = f1 && f2 && f3.pass && f3.conclusive && thr_err <= 1e-10 &&
           control_fails;
  char buf[224];
  std::snprintf(buf, sizeof(buf),
                "F1:%d F2:%d F3:%d (threshold vs 16/e^4 err %.2e); q=p "
                "control rejected:%d",
                int(f1), int(f2), int(f3.pass && f3.conclusive), thr_err,
                int(control_fails));
  o.detail = buf;
  return o;
}

// 9. weight negative controls
Outcome criterion9() {
  // steep power: the C2 average must blow up
  auto steep = check_structural_conditions(power_profile(0.5, 4.5));
  bool steep_fails = false;
  for (const auto& e : steep.entries)
    if (e.name == "C2") steep_fails = !e.pass;

  // shallow power at beta = 0.5: outside the admissible window
  // max{2, 4(1-beta)} < a < 4, and at least one integral condition breaks
  double a = 1.5, beta = 0.5;
  bool window_fails = !(a > std::max(2.0, 4.0 * (1.0 - beta)) && a < 4.0);
  auto shallow = check_structural_conditions(power_profile(beta, a));
  bool c0p_fails = false;
  for (const auto& e : shallow.entries)
    if (e.name == "C0'") c0p_fails = !e.pass;
  bool growth_fails =
      !check_growth_conditions_D(power_profile(beta, a), 12).pass();

  Outcome o;
  o.pass = steep_fails && window_fails && (c0p_fails || growth_fails);
  char buf[224];
  std::snprintf(buf, sizeof(buf),
                "y^4.5 breaks C2:%d; y^1.5 outside window:%d, breaks C0':%d, "
                "breaks growth integrals:%d",
                int(steep_fails), int(window_fails), int(c0p_fails),
                int(growth_fails));
  o.detail = buf;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      only = std::atoi(argv[++i]);
  }
  Outcome (*checks[])() = {criterion1, criterion2, criterion3,
                           criterion4, criterion5, criterion6,
                           criterion7, criterion8, criterion9};
  bool all_pass = true;
  for (int n = 1; n <= 9; ++n) {
    if (only != 0 && n != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o = checks[n - 1]();
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    std::printf("[%s] criterion %d: %s  (%.2fs)\n", o.pass ? "PASS" : "FAIL",
                n, o.detail.c_str(), secs);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
