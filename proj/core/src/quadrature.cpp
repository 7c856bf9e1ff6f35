#include "porolub/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace porolub {

int resolved_subintervals(const QuadratureSpec& q, int max_mode) {
  if (q.subintervals > 0) return q.subintervals;
  return std::max(64, 2 * std::max(0, max_mode));
}

GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  nodes_.resize(n);
  weights_.resize(n);
  const int m = (n + 1) / 2;
  for (int k = 0; k < m; ++k) {
    // Chebyshev-based initial guess for the k-th positive root.
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: P_j(x), derivative from the standard identity.
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes_[k] = -x;
    nodes_[n - 1 - k] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights_[k] = w;
    weights_[n - 1 - k] = w;
  }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int subintervals, int points) {
  if (subintervals < 1) throw std::invalid_argument("subintervals must be >= 1");
  GaussLegendre rule(points);
  const double h = (b - a) / subintervals;
  double total = 0.0;
  for (int i = 0; i < subintervals; ++i) {
    const double left = a + i * h;
    double piece = 0.0;
    for (int q = 0; q < points; ++q) {
      const double x = left + 0.5 * h * (rule.nodes()[q] + 1.0);
      piece += rule.weights()[q] * f(x);
    }
    total += 0.5 * h * piece;
  }
  return total;
}

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace porolub
