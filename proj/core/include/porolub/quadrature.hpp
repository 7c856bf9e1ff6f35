#ifndef POROLUB_QUADRATURE_HPP
#define POROLUB_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace porolub {

/** Composite Gauss-Legendre rule: `points` nodes on each of `subintervals`
 * equal pieces. subintervals == 0 means "choose from the integrand's highest
 * trigonometric mode": max(64, 2*max_mode) panels on [0, pi], which keeps the
 * worst spectral-assembly entry below 1e-14.
 */
struct QuadratureSpec {
  int points = 8;
  int subintervals = 0;
};

int resolved_subintervals(const QuadratureSpec& q, int max_mode);

/** Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
 * on the Legendre recurrence. */
class GaussLegendre {
 public:
  explicit GaussLegendre(int n);
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 int subintervals, int points);

// Classic adaptive Simpson with an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 48);

}  // namespace porolub

#endif
