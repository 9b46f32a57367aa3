#include "wadams/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wadams/radial_core.hpp"

namespace wadams {
namespace {

constexpr double PI = std::numbers::pi;
constexpr double OVERFLOW_T = 700.0;
const double INF = std::numeric_limits<double>::infinity();

}  // namespace

bool GrowthParams::valid() const {
  if (!(beta > 0.0 && beta < 1.0)) return false;
  if (!(alpha > 0.0 && C > 0.0 && c0 > 0.0)) return false;
  return std::min(p, q) > 2.0 / (1.0 - beta);
}

double GrowthParams::m() const { return 2.0 / (1.0 - beta); }

double F_model(double s, const GrowthParams& params) {
  if (s <= 0.0) return 0.0;
  const double t = params.alpha * std::pow(s, params.m());
  if (t > OVERFLOW_T) return INF;
  return params.C * std::pow(s, params.p) * std::expm1(t);
}

double f_model(double s, const GrowthParams& params) {
  if (s <= 0.0) return 0.0;
  const double mm = params.m();
  const double t = params.alpha * std::pow(s, mm);
  if (t > OVERFLOW_T) return INF;
  // p expm1(t) + m t e^t: cancellation-free for small t
  return params.C * std::pow(s, params.p - 1.0) *
         (params.p * std::expm1(t) + mm * t * std::exp(t));
}

double fprime_model(double s, const GrowthParams& params) {
  if (s <= 0.0) return 0.0;
  const double mm = params.m(), p = params.p;
  const double t = params.alpha * std::pow(s, mm);
  if (t > OVERFLOW_T) return INF;
  // d/ds [ C s^(p-1) (p expm1(t) + m t e^t) ],  dt/ds = m t / s
  const double et = std::exp(t);
  const double inner = p * std::expm1(t) + mm * t * et;
  const double dinner = (p * et + mm * et + mm * t * et) * mm * t / s;
  return params.C *
         ((p - 1.0) * std::pow(s, p - 2.0) * inner +
          std::pow(s, p - 1.0) * dinner);
}

ConditionReport check_F1(const GrowthParams& params,
                         const std::vector<double>& s_samples,
                         const NonlinearityFns& fns) {
  if (s_samples.empty()) throw std::invalid_argument("no samples");
  auto f = fns.f ? fns.f : [&](double s) { return f_model(s, params); };
  ConditionReport rep;
  rep.title = "growth bound (G1)";

  // ratio |f| / (s^(p-1) + s^(q-1)(e^t - 1)) over the samples
  std::vector<double> ss, ratio;
  for (double s : s_samples) {
    if (!(s > 0.0)) continue;
    const double t = params.alpha * std::pow(s, params.m());
    if (t > OVERFLOW_T) continue;
    const double denom =
        std::pow(s, params.p - 1.0) + std::pow(s, params.q - 1.0) * std::expm1(t);
    const double fv = std::abs(f(s));
    if (!std::isfinite(fv)) continue;
    ss.push_back(s);
    ratio.push_back(fv / denom);
  }
  if (ss.size() < 4) throw std::invalid_argument("too few usable samples");

  double c0_min = 0.0;
  for (double rr : ratio) c0_min = std::max(c0_min, rr);

  // log-log slope of the ratio over the top factor-2 of s (past the
  // small-s/large-s transition): a positive slope means the ratio is
  // unbounded and no finite c0 can work
  const double s_hi = ss.back(), s_lo_dec = s_hi / 2.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (ss[i] < s_lo_dec || ratio[i] <= 0.0) continue;
    double x = std::log(ss[i]), y = std::log(ratio[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  double slope = 0.0;
  if (n >= 2) slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  ConditionEntry e1;
  e1.name = "c0_min";
  e1.value = c0_min;
  e1.threshold = 0.0;
  e1.pass = std::isfinite(c0_min);
  e1.margin = 0.0;
  e1.note = "minimal feasible c0 over the sample";
  ConditionEntry e2;
  e2.name = "tail_log_slope";
  e2.value = slope;
  e2.threshold = 0.1;
  e2.pass = slope <= 0.1;
  e2.margin = 0.1 - slope;
  e2.note = "log-log slope of |f|/bound over the top factor-2 of s";
  rep.entries = {e1, e2};
  return rep;
}

ConditionReport check_F2(const GrowthParams& params, double M0, double s0,
                         const std::vector<double>& s_samples,
                         const NonlinearityFns& fns) {
  if (!(s0 > 0.0)) throw std::invalid_argument("s0 must be positive");
  auto f = fns.f ? fns.f : [&](double s) { return f_model(s, params); };
  auto F = fns.F ? fns.F : [&](double s) { return F_model(s, params); };
  ConditionReport rep;
  rep.title = "antiderivative domination (G2)";
  double M0_min = 0.0;
  bool holds = true;
  int used = 0;
  for (double s : s_samples) {
    if (s < s0) continue;  // the condition is vacuous below s0
    const double fv = f(s), Fv = F(s);
    if (!std::isfinite(fv) || !std::isfinite(Fv)) continue;
    ++used;
    if (fv > 0.0)
      M0_min = std::max(M0_min, Fv / fv);
    else if (Fv > 0.0)
      holds = false;  // F > 0 with f = 0: no M0 works at this s
    if (Fv > M0 * fv) holds = false;
  }
  ConditionEntry e1;
  e1.name = "M0_min";
  e1.value = M0_min;
  e1.threshold = M0;
  e1.pass = holds && used > 0;
  e1.margin = M0 - M0_min;
  e1.note = "minimal feasible M0 over samples >= s0";
  rep.entries = {e1};
  return rep;
}

F3Result check_F3(const GrowthParams& params, double s_max) {
  if (!(s_max > 1.0)) throw std::invalid_argument("s_max must exceed 1");
  const double mm = params.m(), p = params.p;
  // overflow-free tail ratio f(s) s / e^t = C s^p [(p + m t) - p e^(-t)]
  auto ratio = [&](double s) {
    const double t = params.alpha * std::pow(s, mm);
    return params.C * std::pow(s, p) * ((p + mm * t) - p * std::exp(-t));
  };
  F3Result res;
  res.kappa_threshold = 2.0 / (PI * PI * std::exp(4.0)) *
                        std::pow(alpha_beta(params.beta) / params.alpha,
                                 1.0 - params.beta);
  const int n = 64;
  bool monotone = true;
  double prev = ratio(s_max / 10.0);
  for (int i = 1; i <= n; ++i) {
    double s = s_max / 10.0 * std::pow(10.0, double(i) / n);
    double v = ratio(s);
    if (v < prev * (1.0 - 1e-12)) monotone = false;
    prev = v;
  }
  res.liminf_estimate = ratio(s_max);
  res.conclusive = monotone;
  res.pass = monotone && res.liminf_estimate > res.kappa_threshold;
  return res;
}

double m_star(double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  return 0.5 * std::pow(alpha_beta(beta) / alpha, 1.0 - beta);
}

std::vector<double> growth_samples(double s_lo, double s_hi, int n) {
  if (!(s_lo > 0.0 && s_hi > s_lo && n >= 2))
    throw std::invalid_argument("bad sample ladder");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = s_lo * std::pow(s_hi / s_lo, double(i) / (n - 1));
  return out;
}

}  // namespace wadams
