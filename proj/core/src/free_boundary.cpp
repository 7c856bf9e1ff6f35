#include "porolub/free_boundary.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "porolub/quadrature.hpp"
#include "porolub/rootfind.hpp"

namespace porolub {

namespace {

constexpr int kValidationSamples = 1024;
constexpr double kWeakSignFloor = 1e-14;

}  // namespace

ForcingFunction::ForcingFunction(std::function<double(double)> f, double length)
    : f_(std::move(f)), length_(length) {
  if (!(length_ > 0.0))
    throw std::invalid_argument("ForcingFunction: length must be positive");
  if (!f_) throw std::invalid_argument("ForcingFunction: empty function");

  // Cell-midpoint samples keep the exact endpoints and the exact midpoint
  // out of the strict-sign check; the canonical sin(2x) forcing vanishes at
  // both ends without being invalid.
  double scale = 0.0;
  for (int i = 0; i < kValidationSamples; ++i)
    scale = std::max(scale, std::abs(f_(length_ * (i + 0.5) / kValidationSamples)));
  const double antisym_tol = 1e-10 * std::max(1.0, scale);

  const double mid = 0.5 * length_;
  for (int i = 0; i < kValidationSamples; ++i) {
    const double x = length_ * (i + 0.5) / kValidationSamples;
    const double v = f_(x);
    const double want_positive = x < mid ? v : -v;
    if (want_positive <= -kWeakSignFloor) {
      std::ostringstream msg;
      msg << "ForcingFunction: sign condition violated at x=" << x
          << " (f=" << v << "); need f > 0 on [0, L/2) and f < 0 on (L/2, L]";
      throw std::invalid_argument(msg.str());
    }
    if (want_positive < kWeakSignFloor)
      std::fprintf(stderr,
                   "ForcingFunction: warning: |f(%g)|=%g is below %g away "
                   "from the midpoint\n",
                   x, std::abs(v), kWeakSignFloor);
    const double mirror = f_(length_ - x);
    if (std::abs(mirror + v) > antisym_tol) {
      std::ostringstream msg;
      msg << "ForcingFunction: antisymmetry f(L-x) = -f(x) violated at x=" << x
          << ": f(x)=" << v << ", f(L-x)=" << mirror;
      throw std::invalid_argument(msg.str());
    }
  }
}

double cavitation_point(const ForcingFunction& f, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("cavitation_point: tol must be positive");
  const double L = f.length();
  const double quad_tol = tol / 10.0;
  auto integrand = [&f](double z) { return z * f(z); };
  auto F = [&](double xi) { return adaptive_simpson(integrand, 0.0, xi, quad_tol); };

  const double at_mid = F(0.5 * L);
  if (!(at_mid > 0.0)) {
    std::ostringstream msg;
    msg << "cavitation_point: F(L/2)=" << at_mid << " is not positive; forcing invalid";
    throw std::runtime_error(msg.str());
  }
  const double at_end = F(L);
  if (!(at_end < 0.0)) {
    std::ostringstream msg;
    msg << "cavitation_point: F(L)=" << at_end << " is not negative; forcing invalid";
    throw std::runtime_error(msg.str());
  }
  const double delta = 1e-12 * L;
  return brent(F, 0.5 * L + delta, L - delta, tol);
}

double pressure_profile(const ForcingFunction& f, double xi_bar, double x,
                        double quad_tol) {
  if (x < 0.0 || x > f.length())
    throw std::invalid_argument("pressure_profile: x outside [0, L]");
  if (x >= xi_bar) return 0.0;
  const double load = adaptive_simpson([&f](double z) { return f(z); }, 0.0,
                                       xi_bar, quad_tol);
  const double moment = adaptive_simpson(
      [&f, x](double z) { return (x - z) * f(z); }, 0.0, x, quad_tol);
  return x * load - moment;
}

FreeBoundarySolution::FreeBoundarySolution(ForcingFunction f, double xi_bar,
                                           double quad_tol)
    : f_(std::move(f)), xi_bar_(xi_bar), quad_tol_(quad_tol) {
  load_integral_ =
      adaptive_simpson([this](double z) { return f_(z); }, 0.0, xi_bar_, quad_tol_);
}

double FreeBoundarySolution::u(double x) const {
  if (x >= xi_bar_) return 0.0;
  const double moment = adaptive_simpson(
      [this, x](double z) { return (x - z) * f_(z); }, 0.0, x, quad_tol_);
  return x * load_integral_ - moment;
}

double FreeBoundarySolution::u_prime(double x) const {
  if (x >= xi_bar_) return 0.0;
  const double partial =
      adaptive_simpson([this](double z) { return f_(z); }, 0.0, x, quad_tol_);
  return load_integral_ - partial;
}

std::vector<double> FreeBoundarySolution::nodal(int samples, double end) const {
  if (samples < 2) throw std::invalid_argument("nodal: need at least 2 samples");
  const double dx = end / (samples - 1);
  GaussLegendre rule(8);
  std::vector<double> values(samples);
  values[0] = 0.0;
  double G = 0.0;  // int_0^x f
  double H = 0.0;  // int_0^x z f
  for (int i = 1; i < samples; ++i) {
    const double left = (i - 1) * dx;
    for (int q = 0; q < 8; ++q) {
      const double z = left + 0.5 * dx * (rule.nodes()[q] + 1.0);
      const double w = 0.5 * dx * rule.weights()[q];
      const double fv = f_(z);
      G += w * fv;
      H += w * z * fv;
    }
    const double x = i * dx;
    values[i] = x >= xi_bar_ ? 0.0 : x * (load_integral_ - G) + H;
  }
  return values;
}

FreeBoundarySolution solve_free_boundary(const ForcingFunction& f, double tol) {
  const double xi = cavitation_point(f, tol);
  return FreeBoundarySolution(f, xi, tol / 10.0);
}

OverdeterminedReport verify_overdetermined(const FreeBoundarySolution& sol,
                                           const ForcingFunction& f, int grid) {
  if (grid < 8) throw std::invalid_argument("verify_overdetermined: grid too small");
  const double xi = sol.xi_bar();
  const double dx = xi / grid;

  // Cumulative evaluation of the unclipped closed form on [0, xi]; the
  // second difference of these values carries only local quadrature error.
  GaussLegendre rule(8);
  std::vector<double> u(grid + 1);
  u[0] = 0.0;
  double G = 0.0, H = 0.0;
  const double load = sol.u_prime(0.0);  // int_0^{xi} f
  for (int i = 1; i <= grid; ++i) {
    const double left = (i - 1) * dx;
    for (int q = 0; q < 8; ++q) {
      const double z = left + 0.5 * dx * (rule.nodes()[q] + 1.0);
      const double w = 0.5 * dx * rule.weights()[q];
      const double fv = f(z);
      G += w * fv;
      H += w * z * fv;
    }
    const double x = i * dx;
    u[i] = x * (load - G) + H;
  }

  OverdeterminedReport rep{};
  double worst = 0.0;
  for (int i = 1; i < grid; ++i) {
    const double x = i * dx;
    const double upp = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
    worst = std::max(worst, std::abs(upp + f(x)));
  }
  rep.interior_residual = worst;
  rep.left_value = std::abs(sol.u(0.0));
  rep.right_value = std::abs(u[grid]);

  // One-sided second-order difference for u'(xi), step xi * 1e-5.
  const double h = xi * 1e-5;
  const double uprime = (3.0 * u[grid] - 4.0 * sol.u(xi - h) + sol.u(xi - 2.0 * h)) /
                        (2.0 * h);
  rep.right_derivative = std::abs(uprime);
  return rep;
}

namespace {

// Piecewise-linear interpolation over uniform nodes on [0, L].
double interp(const std::vector<double>& nodes, double L, double x) {
  const int segments = static_cast<int>(nodes.size()) - 1;
  double t = x / L * segments;
  int k = static_cast<int>(t);
  if (k >= segments) k = segments - 1;
  t -= k;
  return nodes[k] * (1.0 - t) + nodes[k + 1] * t;
}

double interp_slope(const std::vector<double>& nodes, double L, double x) {
  const int segments = static_cast<int>(nodes.size()) - 1;
  int k = static_cast<int>(x / L * segments);
  if (k >= segments) k = segments - 1;
  return (nodes[k + 1] - nodes[k]) * segments / L;
}

}  // namespace

double vi_margin(const FreeBoundarySolution& sol, const ForcingFunction& f,
                 const std::function<double(double)>& v,
                 const std::function<double(double)>& v_prime) {
  const double L = f.length();
  const double xi = sol.xi_bar();
  constexpr int kPanels = 64;
  GaussLegendre rule(8);
  double lhs = 0.0, rhs = 0.0;
  for (int s = 0; s < kPanels; ++s) {
    const double a = L * s / kPanels;
    const double b = L * (s + 1) / kPanels;
    std::vector<std::pair<double, double>> pieces;
    if (xi > a && xi < b) {
      pieces.push_back({a, xi});
      pieces.push_back({xi, b});
    } else {
      pieces.push_back({a, b});
    }
    for (auto [pa, pb] : pieces) {
      for (int q = 0; q < 8; ++q) {
        const double x = pa + 0.5 * (pb - pa) * (rule.nodes()[q] + 1.0);
        const double w = 0.5 * (pb - pa) * rule.weights()[q];
        const double up = sol.u_prime(x);
        const double uv = sol.u(x);
        lhs += w * up * (v_prime(x) - up);
        rhs += w * f(x) * (v(x) - uv);
      }
    }
  }
  return lhs - rhs;
}

ViCheckReport vi_equivalence_check(const FreeBoundarySolution& sol,
                                   const ForcingFunction& f, int trials,
                                   std::uint64_t seed, double tol) {
  const double L = f.length();
  constexpr int kSegments = 64;

  auto margin_for = [&](const std::vector<double>& v_nodes) {
    return vi_margin(
        sol, f, [&](double x) { return interp(v_nodes, L, x); },
        [&](double x) { return interp_slope(v_nodes, L, x); });
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double scale = 0.0;
  for (int i = 0; i <= kSegments; ++i)
    scale = std::max(scale, sol.u(L * i / kSegments));

  ViCheckReport rep;
  bool first = true;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> v(kSegments + 1, 0.0);
    for (int i = 1; i < kSegments; ++i) v[i] = 2.0 * scale * unif(rng);
    const double margin = margin_for(v);
    if (first || margin < rep.worst_margin) rep.worst_margin = margin;
    first = false;
    if (margin < -tol) {
      rep.pass = false;
      ++rep.failures;
    }
  }
  return rep;
}

}  // namespace porolub
