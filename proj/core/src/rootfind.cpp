#include "porolub/rootfind.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace porolub {

double brent(const std::function<double(double)>& f, double a, double b,
             double tol, int max_iterations) {
  double fa = f(a);
  double fb = f(b);
  if (fa * fb > 0.0) {
    std::ostringstream msg;
    msg << "brent: root not bracketed, f(" << a << ")=" << fa << ", f(" << b
        << ")=" << fb;
    throw std::invalid_argument(msg.str());
  }
  double c = a, fc = fa;
  double d = b - a, e = b - a;
  const double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (fb * fc > 0.0) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;

    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      // Inverse quadratic / secant step.
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
      const double min2 = std::abs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  return b;
}

}  // namespace porolub
