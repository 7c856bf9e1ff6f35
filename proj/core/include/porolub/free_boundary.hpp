#ifndef POROLUB_FREE_BOUNDARY_HPP
#define POROLUB_FREE_BOUNDARY_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace porolub {

/** Forcing for the one-dimensional cavitation problem on [0, L]: continuous,
 * positive on [0, L/2), negative on (L/2, L], and antisymmetric about the
 * midpoint, f(L - x) = -f(x). The constructor samples 1024 points and throws
 * std::invalid_argument on a sign or antisymmetry violation; samples with
 * |f| < 1e-14 away from the midpoint only earn a stderr warning. */
class ForcingFunction {
 public:
  ForcingFunction(std::function<double(double)> f, double length);

  double operator()(double x) const { return f_(x); }
  double length() const { return length_; }

 private:
  std::function<double(double)> f_;
  double length_;
};

/** The film-rupture point: the unique zero of F(xi) = int_0^xi z f(z) dz in
 * (L/2, L). Bracketed bisection refined by Brent; quadrature at tol/10 so the
 * two tolerances compose. Throws std::runtime_error when F(L/2) <= 0 or
 * F(L) >= 0 (invalid forcing). */
double cavitation_point(const ForcingFunction& f, double tol = 1e-12);

/** Pressure at a point: u(x) = x int_0^xi f - int_0^x (x - z) f(z) dz for
 * x < xi_bar, zero beyond. Adaptive quadrature at quad_tol. */
double pressure_profile(const ForcingFunction& f, double xi_bar, double x,
                        double quad_tol = 1e-12);

/** Cavitation point plus closed-form pressure evaluators; the profile is
 * extended by zero on [xi_bar, L], which keeps it C^1. */
class FreeBoundarySolution {
 public:
  FreeBoundarySolution(ForcingFunction f, double xi_bar, double quad_tol);

  double xi_bar() const { return xi_bar_; }
  const ForcingFunction& forcing() const { return f_; }

  double u(double x) const;
  double u_prime(double x) const;

  // Uniform samples of u on [0, end] computed by one cumulative
  // composite-Gauss pass, so differences of adjacent values stay smooth to
  // roundoff (needed by finite-difference verification).
  std::vector<double> nodal(int samples, double end) const;

 private:
  ForcingFunction f_;
  double xi_bar_;
  double quad_tol_;
  double load_integral_;  // int_0^{xi_bar} f
};

FreeBoundarySolution solve_free_boundary(const ForcingFunction& f,
                                         double tol = 1e-12);

struct OverdeterminedReport {
  double interior_residual;  // max |u'' + f| over interior samples, FD u''
  double left_value;         // |u(0)|
  double right_value;        // |u(xi_bar)|
  double right_derivative;   // |u'(xi_bar)|, one-sided second-order difference
};

OverdeterminedReport verify_overdetermined(const FreeBoundarySolution& sol,
                                           const ForcingFunction& f, int grid);

struct ViCheckReport {
  bool pass = true;
  double worst_margin = 0.0;  // min over trials of a(u, v-u) - <f, v-u>
  int failures = 0;
};

/** Inequality margin int u'(v-u)' - int f(v-u) for one test profile v,
 * evaluated by composite Gauss quadrature split at xi_bar. Non-negative (up
 * to quadrature error) for every admissible v when the zero-extension solves
 * the variational inequality. */
double vi_margin(const FreeBoundarySolution& sol, const ForcingFunction& f,
                 const std::function<double(double)>& v,
                 const std::function<double(double)>& v_prime);

/** Monte-Carlo verification that the zero-extended profile solves the
 * variational inequality: for random non-negative piecewise-linear v with
 * v(0) = v(L) = 0, checks int u'(v-u)' >= int f (v-u) - tol. */
ViCheckReport vi_equivalence_check(const FreeBoundarySolution& sol,
                                   const ForcingFunction& f, int trials,
                                   std::uint64_t seed = 12345,
                                   double tol = 1e-8);

}  // namespace porolub

#endif
