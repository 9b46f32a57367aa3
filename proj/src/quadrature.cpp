#include "wadams/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wadams {
namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (symmetric; nonnegative half listed).
constexpr double xk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
// Gauss-7 weights matching xk[1], xk[3], xk[5], xk[7].
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct PanelEval {
  double kronrod;
  double err;
};

PanelEval gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * xk[i]);
    fv[14 - i] = f(c + h * xk[i]);
  }
  fv[7] = f(c);
  double resk = 0.0, resg = 0.0;
  for (int i = 0; i < 7; ++i) resk += wk[i] * (fv[i] + fv[14 - i]);
  resk += wk[7] * fv[7];
  for (int i = 0; i < 3; ++i) resg += wg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  resg += wg[3] * fv[7];
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadratureSpec& spec) {
  QuadResult out;
  if (!(b > a)) return out;

  struct Panel {
    double a, b, val, err;
    int depth;
  };
  PanelEval e0 = gk15(f, a, b);
  std::vector<Panel> stack{{a, b, e0.kronrod, e0.err, 0}};
  double total = e0.kronrod, toterr = e0.err;

  auto tol = [&](void) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  };

  while (toterr > tol()) {
    // split the worst panel
    std::size_t worst = 0;
    for (std::size_t i = 1; i < stack.size(); ++i)
      if (stack[i].err > stack[worst].err) worst = i;
    Panel p = stack[worst];
    if (p.depth >= spec.max_depth || p.b - p.a < 1e-300 * std::abs(p.b)) {
      out.converged = false;
      break;
    }
    double mid = 0.5 * (p.a + p.b);
    PanelEval l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    total += l.kronrod + r.kronrod - p.val;
    toterr += l.err + r.err - p.err;
    stack[worst] = {p.a, mid, l.kronrod, l.err, p.depth + 1};
    stack.push_back({mid, p.b, r.kronrod, r.err, p.depth + 1});
    if (stack.size() > 100000) {
      out.converged = false;
      break;
    }
  }
  // recompute sums serially for a stable result
  total = 0.0;
  toterr = 0.0;
  std::sort(stack.begin(), stack.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : stack) {
    total += p.val;
    toterr += p.err;
  }
  out.value = total;
  out.error = toterr;
  if (toterr > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) * 10.0)
    out.converged = false;
  return out;
}

QuadResult integrate_power_tail(const Integrand& f, double a,
                                double decay_exponent,
                                const QuadratureSpec& spec) {
  QuadResult out;
  if (decay_exponent <= 1.0) {
    out.converged = false;  // non-integrable tail
    return out;
  }
  double lo = a;
  double hi = std::max(2.0 * std::abs(a), a + 1.0);
  double total = 0.0, toterr = 0.0;
  bool ok = true;
  for (int iter = 0; iter < 64; ++iter) {
    QuadResult piece = integrate(f, lo, hi, spec);
    total += piece.value;
    toterr += piece.error;
    ok = ok && piece.converged;
    double tail = std::abs(f(hi)) * hi / (decay_exponent - 1.0);
    if (tail <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) ||
        hi > 1e150) {
      toterr += tail;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  out.value = total;
  out.error = toterr;
  out.converged = ok;
  return out;
}

}  // namespace wadams
