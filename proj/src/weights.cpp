#include "wadams/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wadams/parallel.hpp"

namespace wadams {
namespace {

constexpr double PI = std::numbers::pi;

// Fritsch-Carlson monotone cubic slopes; the interpolant never overshoots the
// data, which keeps tabulated chi positive (1/chi is integrated).
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = delta[0];
  d[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // clamp endpoint slopes (Fritsch-Carlson endpoint rule)
  auto clamp_end = [](double dd, double del) {
    if (dd * del <= 0.0) return 0.0;
    if (std::abs(dd) > 3.0 * std::abs(del)) return 3.0 * del;
    return dd;
  };
  d[0] = clamp_end(d[0], delta[0]);
  d[n - 1] = clamp_end(d[n - 1], delta[n - 2]);
  return d;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& d, double t) {
  auto it = std::upper_bound(x.begin(), x.end(), t);
  std::size_t i = (it == x.begin()) ? 0 : (std::size_t)(it - x.begin()) - 1;
  if (i + 1 >= x.size()) i = x.size() - 2;
  double h = x[i + 1] - x[i], s = (t - x[i]) / h;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  double h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s);
  double h11 = s * s * (s - 1);
  return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
}

}  // namespace

ChiSpec ChiSpec::power(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("chi power exponent must be > 0");
  ChiSpec c;
  c.kind = Kind::Power;
  c.a = a;
  return c;
}

ChiSpec ChiSpec::table(std::vector<double> r, std::vector<double> vals,
                       double tail_exponent) {
  if (r.size() < 2 || r.size() != vals.size())
    throw std::invalid_argument("chi table needs >= 2 matched samples");
  if (std::abs(r.front() - 1.0) > 1e-12)
    throw std::invalid_argument("chi table must start at r = 1");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i > 0 && !(r[i] > r[i - 1]))
      throw std::invalid_argument("chi table radii must increase");
    if (!(vals[i] > 0.0))
      throw std::invalid_argument("chi table values must be positive");
  }
  // rescale so chi(1) = 1 exactly
  const double s = vals.front();
  for (double& v : vals) v /= s;
  ChiSpec c;
  c.kind = Kind::Table;
  c.r = std::move(r);
  c.vals = std::move(vals);
  c.tail_exponent = tail_exponent;
  c.has_tail_exponent = true;
  return c;
}

double ChiSpec::eval(double y) const {
  if (y < 1.0) y = 1.0;
  if (kind == Kind::Power) return std::pow(y, a);
  if (y >= r.back())
    return vals.back() * std::pow(y / r.back(), tail_exponent);
  static thread_local const std::vector<double>* cached = nullptr;
  static thread_local std::vector<double> slopes;
  if (cached != &r) {
    slopes = pchip_slopes(r, vals);
    cached = &r;
  }
  return pchip_eval(r, vals, slopes, y);
}

double ChiSpec::inf_estimate() const {
  if (kind == Kind::Power) return 1.0;  // y^a with a > 0, min at y = 1
  double m = vals[0];
  for (double v : vals) m = std::min(m, v);
  if (tail_exponent < 0.0) return 0.0;  // decaying tail: inf not bounded away
  return m;
}

double WeightProfile::eval(double r) const {
  if (!(r > 0.0))
    throw std::domain_error(
        "weight singular at origin; integrate against r^3 instead");
  if (r < 1.0) return std::pow(std::log(std::numbers::e / r), beta);
  return chi.eval(r);
}

bool WeightProfile::valid(std::string* why) const {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  if (!(beta > 0.0 && beta < 1.0)) return fail("beta must lie in (0,1)");
  if (std::abs(chi.eval(1.0) - 1.0) > 1e-12) return fail("chi(1) must be 1");
  if (!(chi.inf_estimate() > 0.0)) return fail("inf chi must be positive");
  return true;
}

bool ConditionReport::pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return !entries.empty();
}

ConditionReport check_structural_conditions(const WeightProfile& profile,
                                            const QuadratureSpec& quad,
                                            double r_max) {
  if (r_max < 1e3) throw std::invalid_argument("r_max must be >= 1e3");
  std::string why;
  if (!profile.valid(&why)) throw std::invalid_argument(why);
  const ChiSpec& chi = profile.chi;
  if (chi.kind == ChiSpec::Kind::Table && !chi.has_tail_exponent)
    throw std::invalid_argument(
        "tabulated chi without tail exponent: cannot certify improper "
        "integrals");
  const double a_t =
      (chi.kind == ChiSpec::Kind::Power) ? chi.a : chi.tail_exponent;

  ConditionReport rep;
  rep.title = "structural conditions";

  // split improper integrals at 1e6, analytic power tail beyond
  const double SPLIT = 1e6;
  auto improper = [&](const Integrand& f, double integrand_decay) {
    QuadResult head = integrate(f, 1.0, SPLIT, quad);
    QuadResult tail;
    if (integrand_decay > 1.0) {
      tail.value = std::abs(f(SPLIT)) * SPLIT / (integrand_decay - 1.0);
      tail.converged = true;
    } else {
      tail.converged = false;
    }
    QuadResult out;
    out.value = head.value + (tail.converged ? tail.value : 0.0);
    out.error = head.error + (tail.converged ? tail.value * 0.5 : 0.0);
    out.converged = head.converged && tail.converged;
    return out;
  };

  {  // (C0): int 1/(chi y), integrand ~ y^-(1+a_t)
    QuadResult q = improper([&](double y) { return 1.0 / (chi.eval(y) * y); },
                            1.0 + a_t);
    ConditionEntry e;
    e.name = "C0";
    e.value = q.value;
    e.pass = q.converged && a_t > 0.0;
    e.note = e.pass ? "finite" : "divergent (tail exponent <= 0)";
    if (!e.pass) e.note += "; partial sum to 1e6 = " + std::to_string(q.value);
    rep.entries.push_back(e);
  }
  {  // (C0'): int y/chi, integrand ~ y^(1-a_t)
    QuadResult q =
        improper([&](double y) { return y / chi.eval(y); }, a_t - 1.0);
    ConditionEntry e;
    e.name = "C0'";
    e.value = q.value;
    e.pass = q.converged && a_t > 2.0;
    e.note = e.pass ? "finite" : "divergent (tail exponent <= 2)";
    if (!e.pass) e.note += "; partial sum to 1e6 = " + std::to_string(q.value);
    rep.entries.push_back(e);
  }

  // (C1)-(C3) suprema over the geometric grid r = 1.1^j
  std::vector<double> grid{1.0};
  while (grid.back() < r_max) grid.push_back(grid.back() * 1.1);
  const std::size_t n = grid.size();

  std::vector<double> seg_chi(n - 1), seg_inv(n - 1);
  parallel_for(n - 1, [&](std::size_t j) {
    QuadratureSpec loose = quad;
    loose.rel_tol = std::max(quad.rel_tol, 1e-10);
    seg_chi[j] = integrate([&](double t) { return t * t * t * chi.eval(t); },
                           grid[j], grid[j + 1], loose)
                     .value;
    seg_inv[j] = integrate([&](double t) { return t * t * t / chi.eval(t); },
                           grid[j], grid[j + 1], loose)
                     .value;
  });

  std::vector<double> m1(n, 0.0), m2(n, 0.0), m3(n, 0.0);
  double cchi = 0.0, cinv = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      cchi += seg_chi[j - 1];
      cinv += seg_inv[j - 1];
    }
    const double r8 = std::pow(grid[j], 8);
    m1[j] = cchi * cinv / r8;
    m2[j] = cchi / r8;
    double mx = 0.0, mn = 1e300;
    for (int i = 0; i <= 32; ++i) {
      double t = grid[j] * std::pow(4.0, i / 32.0);
      double c = chi.eval(t);
      mx = std::max(mx, c);
      mn = std::min(mn, c);
    }
    m3[j] = mx / mn;
  }

  // empirical boundedness: the supremum over the last decade must not exceed
  // the one over the previous decade by more than 5%
  auto decade_sup = [&](const std::vector<double>& m, double lo, double hi) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (grid[j] >= lo && grid[j] < hi) s = std::max(s, m[j]);
    return s;
  };
  auto add_sup_entry = [&](const char* name, const std::vector<double>& m) {
    double sup = *std::max_element(m.begin(), m.end());
    double last = decade_sup(m, r_max / 10.0, r_max * 1.0001);
    double prev = decade_sup(m, r_max / 100.0, r_max / 10.0);
    double ratio = (prev > 0.0) ? last / prev : 1.0;
    ConditionEntry e;
    e.name = name;
    e.value = sup;
    e.threshold = 1.05;
    e.pass = ratio <= 1.05;
    e.margin = 1.05 - ratio;
    e.note = "sup over grid (empirical); last/prev decade ratio = " +
             std::to_string(ratio);
    rep.entries.push_back(e);
  };
  add_sup_entry("C1", m1);
  add_sup_entry("C2", m2);
  add_sup_entry("C3", m3);
  return rep;
}

std::vector<Ball> default_ball_suite() {
  std::vector<Ball> out;
  for (int i = 0; i < 32; ++i) {
    double rho = std::pow(10.0, -3.0 + 6.0 * i / 31.0);
    out.push_back({rho, rho});        // overlapping geometry: |x0| < 2 rho
    out.push_back({3.0 * rho, rho});  // separated geometry:  |x0| >= 2 rho
  }
  return out;
}

namespace {

// Surface area of the part of the sphere |x| = r inside B(x0, rho), x0 at
// distance c from the origin, in R^4. Spherical cap of colatitude theta on S^3
// of radius r has area 2 pi r^3 (theta - sin theta cos theta).
double sphere_cap_area(double c, double rho, double r) {
  if (r <= 0.0) return 0.0;
  if (c == 0.0) return (r <= rho) ? 2.0 * PI * PI * r * r * r : 0.0;
  double ct = (c * c + r * r - rho * rho) / (2.0 * c * r);
  ct = std::clamp(ct, -1.0, 1.0);
  double th = std::acos(ct);
  return 2.0 * PI * r * r * r * (th - std::sin(th) * std::cos(th));
}

}  // namespace

ConditionReport check_a2(const WeightProfile& profile,
                         const std::vector<Ball>& balls,
                         const QuadratureSpec& quad) {
  if (balls.empty()) throw std::invalid_argument("A2 ball list is empty");
  ConditionReport rep;
  rep.title = "A2 ball products";
  rep.entries.resize(balls.size());

  parallel_for(balls.size(), [&](std::size_t i) {
    const Ball& B = balls[i];
    const double lo = std::max(0.0, B.center_radius - B.radius);
    const double hi = B.center_radius + B.radius;
    auto cap = [&](double r) {
      return sphere_cap_area(B.center_radius, B.radius, r);
    };
    // split the radial reduction at the weight kink r = 1 when it is inside
    std::vector<double> cuts{lo};
    if (lo < 1.0 && hi > 1.0) cuts.push_back(1.0);
    cuts.push_back(hi);
    double vol = 0.0, aw = 0.0, ainv = 0.0;
    bool ok = true;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      QuadResult v = integrate(cap, cuts[s], cuts[s + 1], quad);
      QuadResult w = integrate(
          [&](double r) { return cap(r) * profile.eval(r); }, cuts[s],
          cuts[s + 1], quad);
      QuadResult wi = integrate(
          [&](double r) { return cap(r) / profile.eval(r); }, cuts[s],
          cuts[s + 1], quad);
      vol += v.value;
      aw += w.value;
      ainv += wi.value;
      ok = ok && v.converged && w.converged && wi.converged;
    }
    ConditionEntry e;
    e.name = "ball(c=" + std::to_string(B.center_radius) +
             ",rho=" + std::to_string(B.radius) + ")";
    if (ok && vol > 0.0) {
      e.value = (aw / vol) * (ainv / vol);
      e.pass = std::isfinite(e.value) && e.value >= 1.0 - 1e-9;
      e.margin = e.value - 1.0;
    } else {
      e.pass = false;
      e.note = "quadrature non-convergence";
    }
    rep.entries[i] = e;
  });

  double mx = 0.0;
  for (const auto& e : rep.entries) mx = std::max(mx, e.value);
  ConditionEntry summary;
  summary.name = "A2_empirical_constant";
  summary.value = mx;
  summary.pass = std::isfinite(mx) && mx >= 1.0;
  summary.note = "max ball product over the suite";
  rep.entries.push_back(summary);
  return rep;
}

ConditionReport check_growth_conditions_D(const WeightProfile& profile,
                                          int k_max,
                                          const QuadratureSpec& quad) {
  if (k_max < 8) throw std::invalid_argument("k_max must be >= 8");
  const ChiSpec& chi = profile.chi;
  const double beta = profile.beta;
  const double a_t =
      (chi.kind == ChiSpec::Kind::Power) ? chi.a : chi.tail_exponent;

  // inner integrals; closed forms for power chi, cached cumulative otherwise
  std::function<double(double)> inner1, inner2;
  if (chi.kind == ChiSpec::Kind::Power) {
    const double a = chi.a;
    inner1 = [a](double r) { return std::pow(r, -a) / a; };
    inner2 = [a](double r) {
      if (std::abs(a - 2.0) < 1e-12) return std::log(r);
      return (1.0 - std::pow(r, 2.0 - a)) / (a - 2.0);
    };
  } else {
    // cumulative tables on a fine geometric grid, linear in log r between nodes
    std::vector<double> g{1.0};
    while (g.back() < 1e8) g.push_back(g.back() * std::pow(10.0, 0.025));
    std::vector<double> c1(g.size(), 0.0), c2(g.size(), 0.0);
    for (std::size_t j = 1; j < g.size(); ++j) {
      c1[j] = c1[j - 1] +
              integrate([&](double y) { return 1.0 / (chi.eval(y) * y); },
                        g[j - 1], g[j], quad)
                  .value;
      c2[j] = c2[j - 1] +
              integrate([&](double y) { return y / chi.eval(y); }, g[j - 1],
                        g[j], quad)
                  .value;
    }
    double total1 = c1.back();
    if (a_t > 0.0)
      total1 += (1.0 / (chi.eval(g.back()) * g.back())) * g.back() / a_t;
    auto interp = [g](const std::vector<double>& c, double r) {
      auto it = std::upper_bound(g.begin(), g.end(), r);
      std::size_t j = (it == g.begin()) ? 0 : (std::size_t)(it - g.begin()) - 1;
      if (j + 1 >= g.size()) return c.back();
      double t = std::log(r / g[j]) / std::log(g[j + 1] / g[j]);
      return c[j] + t * (c[j + 1] - c[j]);
    };
    inner1 = [=](double r) { return std::max(0.0, total1 - interp(c1, r)); };
    inner2 = [=](double r) { return interp(c2, r); };
  }

  ConditionReport rep;
  rep.title = "growth integrals";
  const double pw = 1.0 / (1.0 - beta);
  const double k_exempt = 2.0 * (1.0 - beta);

  std::vector<double> j1(k_max + 1, 0.0), j2(k_max + 1, 0.0);
  std::vector<int> ok1(k_max + 1, 1), ok2(k_max + 1, 1);
  parallel_for((std::size_t)k_max, [&](std::size_t idx) {
    int k = (int)idx + 1;
    const double K = k * pw;
    {
      // integrand r^3 * inner1(r)^K ~ r^(3 - a_t K)
      double decay = a_t * K - 3.0;
      QuadResult q = integrate_power_tail(
          [&](double r) { return std::pow(r, 3) * std::pow(inner1(r), K); },
          1.0, decay, quad);
      j1[k] = q.value;
      ok1[k] = q.converged ? 1 : 0;
    }
    if (k > k_exempt) {
      // integrand r^(3-2K) * inner2(r)^K ~ r^(3-2K) for large r
      double decay = 2.0 * K - 3.0;
      QuadResult q = integrate_power_tail(
          [&](double r) {
            return std::pow(r, 3.0 - 2.0 * K) * std::pow(inner2(r), K);
          },
          1.0, decay, quad);
      j2[k] = q.value;
      ok2[k] = q.converged ? 1 : 0;
    }
  });

  auto seq_entry = [&](const char* name, const std::vector<double>& j,
                       const std::vector<int>& ok, int k_lo) {
    ConditionEntry e;
    e.name = name;
    double cmax = 0.0;
    bool all_ok = true;
    int bad_k = 0;
    for (int k = k_lo; k <= k_max; ++k) {
      if (!ok[k]) {
        all_ok = false;
        if (!bad_k) bad_k = k;
      }
      cmax = std::max(cmax, std::pow(j[k], 1.0 / k));
    }
    // bounded sequence check: successive ratios of J(k)^(1/k) over the last
    // five k stay within 5%
    double worst_ratio = 0.0;
    for (int k = std::max(k_lo, k_max - 5); k < k_max; ++k) {
      double r =
          std::pow(j[k + 1], 1.0 / (k + 1)) / std::pow(j[k], 1.0 / k);
      worst_ratio = std::max(worst_ratio, r);
    }
    e.value = cmax;
    e.threshold = 1.05;
    e.pass = all_ok && worst_ratio <= 1.05;
    e.margin = 1.05 - worst_ratio;
    if (!all_ok)
      e.note = "divergent integral at k = " + std::to_string(bad_k);
    else
      e.note = "fitted constant = max_k J(k)^(1/k); tail ratio = " +
               std::to_string(worst_ratio);
    rep.entries.push_back(e);
  };
  seq_entry("D1", j1, ok1, 1);
  int k_lo2 = (int)std::floor(k_exempt) + 1;
  seq_entry("D2", j2, ok2, k_lo2);
  if (k_lo2 > 1) {
    ConditionEntry e;
    e.name = "D2_exempt";
    e.value = k_lo2 - 1;
    e.pass = true;
    e.note =
        "k <= 2(1-beta) skipped: the inner integral tends to a constant, so "
        "the integrand is ~ r^(3-2k/(1-beta)) and diverges for every "
        "admissible chi";
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace wadams
