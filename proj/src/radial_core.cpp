#include "wadams/radial_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "wadams/parallel.hpp"

namespace wadams {
namespace {

constexpr double PI = std::numbers::pi;
constexpr double TWO_PI2 = 2.0 * PI * PI;
constexpr double EXP_OVERFLOW = 700.0;

// Fornberg finite-difference weights: derivative of order m at point z from
// values at the (arbitrary, distinct) stencil nodes x[0..n-1].
std::vector<double> fd_weights(double z, const std::vector<double>& x, int m) {
  const int n = (int)x.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0, c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][m];
  return w;
}

// 2 pi^2 int f(r) r^3 dr over [cuts.front(), cuts.back()], then a power tail
// beyond if tail_decay (decay exponent of f itself) is given > 0.
QuadResult radial_integral(const std::function<double(double)>& f,
                           std::vector<double> cuts, bool has_tail,
                           double tail_decay, const QuadratureSpec& quad) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto g = [&](double r) { return f(r) * r * r * r; };
  QuadResult out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    QuadResult p = integrate(g, cuts[i], cuts[i + 1], quad);
    out.value += p.value;
    out.error += p.error;
    out.converged = out.converged && p.converged;
  }
  if (has_tail) {
    if (tail_decay <= 4.0)
      throw std::domain_error(
          "declared decay makes the radial integral non-integrable");
    QuadResult t = integrate_power_tail(g, cuts.back(), tail_decay - 3.0, quad);
    out.value += t.value;
    out.error += t.error;
    out.converged = out.converged && t.converged;
  }
  out.value *= TWO_PI2;
  out.error *= TWO_PI2;
  return out;
}

std::vector<double> cuts_for(const RadialFunction& u, double extra_hi = 0.0) {
  std::vector<double> cuts = u.breakpoints();
  if (extra_hi > cuts.back()) cuts.push_back(extra_hi);
  return cuts;
}

}  // namespace

RadialGrid RadialGrid::make(double r_min, double r_max, int nodes_per_decade) {
  if (!(r_min > 0.0 && r_max > r_min))
    throw std::invalid_argument("bad grid range");
  if (nodes_per_decade < 3)
    throw std::invalid_argument("need >= 3 nodes per decade");
  RadialGrid g;
  g.nodes_per_decade = nodes_per_decade;
  const double npd = nodes_per_decade;
  long jmin = (long)std::floor(npd * std::log10(r_min) + 1e-9);
  long jmax = (long)std::ceil(npd * std::log10(r_max) - 1e-9);
  for (long j = jmin; j <= jmax; ++j)
    g.nodes.push_back(j == 0 ? 1.0 : std::pow(10.0, (double)j / npd));
  return g;
}

RadialFunction RadialFunction::closed_form(std::vector<Piece> pieces,
                                           double decay_exponent) {
  if (pieces.empty()) throw std::invalid_argument("no pieces");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (std::abs(pieces[i].r_hi - pieces[i + 1].r_lo) > 1e-12)
      throw std::invalid_argument("pieces must abut");
    double b = pieces[i].r_hi;
    double l = pieces[i].value(b), r = pieces[i + 1].value(b);
    if (std::abs(l - r) > 1e-10 * std::max(1.0, std::abs(l)))
      throw std::invalid_argument("value discontinuous across piece boundary");
  }
  RadialFunction u;
  u.closed_ = true;
  u.pieces_ = std::move(pieces);
  u.decay_ = decay_exponent;
  return u;
}

RadialFunction RadialFunction::sampled(RadialGrid grid,
                                       std::vector<double> values,
                                       double decay_exponent) {
  if (grid.nodes.size() != values.size())
    throw std::invalid_argument("grid/value size mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite sample");
  if (decay_exponent < 2.0)
    throw std::invalid_argument("declared decay exponent must be >= 2");
  RadialFunction u;
  u.closed_ = false;
  u.grid_ = std::move(grid);
  u.values_ = std::move(values);
  u.decay_ = decay_exponent;
  return u;
}

double RadialFunction::value(double r) const {
  if (closed_) {
    for (const Piece& p : pieces_)
      if (r >= p.r_lo && (r < p.r_hi || (&p == &pieces_.back() && r <= p.r_hi)))
        return p.value(r);
    return 0.0;  // beyond finite support
  }
  const auto& x = grid_.nodes;
  if (r <= x.front()) return values_.front();
  if (r >= x.back())
    return values_.back() * std::pow(r / x.back(), -decay_);
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = (std::size_t)(it - x.begin()) - 1;
  double t = std::log(r / x[i]) / std::log(x[i + 1] / x[i]);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

bool RadialFunction::has_laplacian() const {
  if (!closed_) return !lap_values_.empty();
  for (const Piece& p : pieces_)
    if (!p.laplacian) return false;
  return true;
}

double RadialFunction::laplacian(double r) const {
  if (closed_) {
    for (const Piece& p : pieces_)
      if (r >= p.r_lo && (r < p.r_hi || (&p == &pieces_.back() && r <= p.r_hi)))
        return p.laplacian ? p.laplacian(r) : 0.0;
    return 0.0;
  }
  if (lap_values_.empty())
    throw std::logic_error("sampled function has no Laplacian attached");
  const auto& x = grid_.nodes;
  if (r <= x.front()) return lap_values_.front();
  if (r >= x.back())
    return lap_values_.back() * std::pow(r / x.back(), -(decay_ + 2.0));
  auto it = std::upper_bound(x.begin(), x.end(), r);
  std::size_t i = (std::size_t)(it - x.begin()) - 1;
  double t = std::log(r / x[i]) / std::log(x[i + 1] / x[i]);
  return lap_values_[i] + t * (lap_values_[i + 1] - lap_values_[i]);
}

bool RadialFunction::has_derivative() const {
  if (!closed_) return false;
  for (const Piece& p : pieces_)
    if (!p.derivative) return false;
  return true;
}

double RadialFunction::derivative(double r) const {
  if (!closed_) throw std::logic_error("derivative: closed forms only");
  for (const Piece& p : pieces_)
    if (r >= p.r_lo && (r < p.r_hi || (&p == &pieces_.back() && r <= p.r_hi)))
      return p.derivative ? p.derivative(r) : 0.0;
  return 0.0;
}

double RadialFunction::support_end() const {
  if (closed_) return pieces_.back().r_hi;
  return std::numeric_limits<double>::infinity();
}

std::vector<double> RadialFunction::breakpoints() const {
  std::vector<double> b;
  if (closed_) {
    b.push_back(pieces_.front().r_lo);
    for (const Piece& p : pieces_)
      if (std::isfinite(p.r_hi)) b.push_back(p.r_hi);
  } else {
    b.push_back(0.0);
    b.push_back(grid_.nodes.front());
    b.push_back(grid_.nodes.back());
  }
  if (b.front() < 1.0 && b.back() > 1.0) b.push_back(1.0);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double RadialFunction::sup_abs() const {
  double s = 0.0;
  if (closed_) {
    for (const Piece& p : pieces_) {
      double hi = std::isfinite(p.r_hi) ? p.r_hi : std::max(p.r_lo * 10, 1e3);
      for (int i = 0; i <= 400; ++i) {
        double r = p.r_lo + (hi - p.r_lo) * i / 400.0;
        if (r <= 0) r = hi * 1e-12;
        s = std::max(s, std::abs(p.value(r)));
      }
    }
  } else {
    for (double v : values_) s = std::max(s, std::abs(v));
  }
  return s;
}

RadialFunction radial_laplacian(const RadialFunction& u) {
  if (u.is_closed_form()) {
    if (!u.has_laplacian())
      throw std::invalid_argument("closed form lacks Laplacian pieces");
    std::vector<Piece> out;
    for (const Piece& p : u.pieces_) {
      Piece q;
      q.r_lo = p.r_lo;
      q.r_hi = p.r_hi;
      q.value = p.laplacian;
      out.push_back(q);
    }
    RadialFunction l;
    l.closed_ = true;
    l.pieces_ = std::move(out);
    l.decay_ = u.decay_ + 2.0;
    return l;
  }
  if (u.grid_.nodes_per_decade < 5.0)
    throw std::invalid_argument(
        "sampled Laplacian needs >= 5 nodes per decade");
  const auto& r = u.grid_.nodes;
  const auto& v = u.values_;
  const std::size_t n = r.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::log(r[i]);
  // index of the kink node r = 1 (present by construction when 1 is inside)
  std::size_t kink = n;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(r[i] - 1.0) < 1e-14) kink = i;

  std::vector<double> lap(n, 0.0);
  const int W = 6;  // 6-node stencils: 4th order for the second derivative
  parallel_for(n, [&](std::size_t i) {
    // choose a stencil window on one side of the kink
    long lo = (long)i - W / 2;
    long hi = lo + W - 1;
    auto clampwin = [&](long a, long b) {
      if (lo < a) {
        hi += a - lo;
        lo = a;
      }
      if (hi > b) {
        lo -= hi - b;
        hi = b;
      }
      lo = std::max(lo, a);
    };
    if (kink < n && i <= kink)
      clampwin(0, (long)kink);
    else if (kink < n)
      clampwin((long)kink, (long)n - 1);
    else
      clampwin(0, (long)n - 1);
    std::vector<double> sx(x.begin() + lo, x.begin() + hi + 1);
    auto w1 = fd_weights(x[i], sx, 1);
    auto w2 = fd_weights(x[i], sx, 2);
    double ux = 0.0, uxx = 0.0;
    for (long j = lo; j <= hi; ++j) {
      ux += w1[j - lo] * v[j];
      uxx += w2[j - lo] * v[j];
    }
    // Lap u = u'' + 3u'/r = (u_xx + 2 u_x)/r^2 with x = log r
    lap[i] = (uxx + 2.0 * ux) / (r[i] * r[i]);
  });
  RadialFunction l;
  l.closed_ = false;
  l.grid_ = u.grid_;
  l.values_ = lap;       // the Laplacian is the value of the result
  l.lap_values_ = {};    // second Laplacian not provided
  l.decay_ = u.decay_ + 2.0;
  return l;
}

QuadResult integrate_radial(const RadialFunction& g,
                            const QuadratureSpec& quad) {
  bool tail = !std::isfinite(g.support_end());
  return radial_integral([&](double r) { return g.value(r); }, cuts_for(g),
                         tail, g.decay_exponent(), quad);
}

double weighted_seminorm(const RadialFunction& u, const WeightProfile& profile,
                         const QuadratureSpec& quad) {
  if (u.is_closed_form() && !u.has_laplacian())
    throw std::invalid_argument("weighted_seminorm needs the Laplacian");
  RadialFunction lap = radial_laplacian(u);
  bool tail = !std::isfinite(u.support_end());
  const double a_t = (profile.chi.kind == ChiSpec::Kind::Power)
                         ? profile.chi.a
                         : profile.chi.tail_exponent;
  // integrand w |Lap u|^2 ~ r^(a_t - 2(d+2))
  double tail_decay = 2.0 * (u.decay_exponent() + 2.0) - a_t;
  QuadResult q = radial_integral(
      [&](double r) {
        double l = lap.value(r);
        return profile.eval(r) * l * l;
      },
      cuts_for(u), tail, tail_decay, quad);
  return std::sqrt(std::max(0.0, q.value));
}

double lp_norm(const RadialFunction& u, double p, double beta,
               const QuadratureSpec& quad, bool* below_embedding) {
  if (below_embedding) *below_embedding = p < 2.0 / (1.0 - beta) - 1e-12;
  bool tail = !std::isfinite(u.support_end());
  QuadResult q = radial_integral(
      [&](double r) { return std::pow(std::abs(u.value(r)), p); }, cuts_for(u),
      tail, p * u.decay_exponent(), quad);
  return std::pow(std::max(0.0, q.value), 1.0 / p);
}

AdamsValue adams_functional(const RadialFunction& u, double alpha, double beta,
                            const QuadratureSpec& quad) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double m = 2.0 / (1.0 - beta);
  AdamsValue out;
  // overflow scan: the exponent is largest where |u| is largest
  {
    double worst = 0.0, worst_r = 0.0;
    auto scan = [&](double lo, double hi) {
      for (int i = 0; i <= 512; ++i) {
        double r = lo + (hi - lo) * i / 512.0;
        if (r <= 0) continue;
        double t = alpha * std::pow(std::abs(u.value(r)), m);
        if (t > worst) {
          worst = t;
          worst_r = r;
        }
      }
    };
    auto bp = u.breakpoints();
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) scan(bp[i], bp[i + 1]);
    scan(0.0, bp.front() > 0 ? bp.front() : 1e-6);
    if (worst > EXP_OVERFLOW) {
      out.overflow = true;
      out.blowup_radius = worst_r;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
  }
  bool tail = !std::isfinite(u.support_end());
  // tail integrand ~ alpha |u|^m ~ r^(-d m)
  QuadResult q = radial_integral(
      [&](double r) {
        double t = alpha * std::pow(std::abs(u.value(r)), m);
        return std::expm1(t);
      },
      cuts_for(u), tail, u.decay_exponent() * m, quad);
  out.value = q.value;
  out.error = q.error;
  return out;
}

SeriesValue adams_functional_series(const RadialFunction& u, double alpha,
                                    double beta, int K,
                                    const QuadratureSpec& quad) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  const double m = 2.0 / (1.0 - beta);
  bool tail = !std::isfinite(u.support_end());
  std::vector<double> I(K + 1, 0.0);
  parallel_for((std::size_t)K, [&](std::size_t idx) {
    int k = (int)idx + 1;
    I[k] = radial_integral(
               [&](double r) {
                 return std::pow(std::abs(u.value(r)), m * k);
               },
               cuts_for(u), tail, m * k * u.decay_exponent(), quad)
               .value;
  });
  SeriesValue out;
  double fact = 1.0;  // alpha^k / k!
  for (int k = 1; k <= K; ++k) {
    fact *= alpha / k;
    out.terms.push_back(fact * I[k]);
    out.value += fact * I[k];
  }
  // tail: I_k <= s^(k-1) I_1 with s = sup|u|^m, so
  // sum_{k>K} alpha^k/k! I_k <= (I_1/s) * (alpha s)^(K+1)/(K+1)! / (1 - q)
  const double s = std::pow(u.sup_abs(), m);
  if (s > 0.0 && I[1] > 0.0) {
    double as = alpha * s;
    if (as >= K + 2) {
      out.tail_bound = std::numeric_limits<double>::infinity();
    } else {
      double logterm = (K + 1) * std::log(as) - std::lgamma(K + 2.0);
      out.tail_bound =
          (I[1] / s) * std::exp(logterm) / (1.0 - as / (K + 2.0));
    }
  }
  return out;
}

double alpha_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0,1)");
  const long double pi = std::numbers::pi_v<long double>;
  long double base = 8.0L * pi * pi * (1.0L - (long double)beta);
  return (double)(4.0L * powl(base, 1.0L / (1.0L - (long double)beta)));
}

double concentration_limit_pbeta(double norm_u, double beta) {
  if (norm_u < 0.0 || norm_u > 1.0 + 1e-14)
    throw std::domain_error("norm must lie in [0,1]");
  if (norm_u >= 1.0) return std::numeric_limits<double>::infinity();
  return std::pow(1.0 - norm_u * norm_u, -1.0 / (1.0 - beta));
}

}  // namespace wadams
