#include "porolub/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace porolub {

double SineSeries::evaluate(double x) const {
  double s = 0.0;
  for (int n = order(); n >= 1; --n) s += coeffs[n - 1] * std::sin(n * x);
  return s;
}

double SineSeries::derivative(double x) const {
  double s = 0.0;
  for (int n = order(); n >= 1; --n) s += n * coeffs[n - 1] * std::cos(n * x);
  return s;
}

double coth(double z) {
  if (!(z > 0.0)) throw std::invalid_argument("coth: argument must be positive");
  return 1.0 / std::tanh(z);
}

double sinh_ratio(int n, double y, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("sinh_ratio: a must be positive");
  if (y < 0.0 || y > a) throw std::invalid_argument("sinh_ratio: y outside [0, a]");
  const double num = 1.0 - std::exp(-2.0 * n * y);
  const double den = 1.0 - std::exp(-2.0 * n * a);
  return std::exp(static_cast<double>(n) * (y - a)) * num / den;
}

SineSeries sine_coefficients(const std::function<double(double)>& P, int N,
                             const QuadratureSpec& quad, double* quad_error,
                             double endpoint_tol) {
  if (N < 1) throw std::invalid_argument("sine_coefficients: N must be >= 1");
  const double p0 = P(0.0);
  const double p1 = P(M_PI);
  if (std::abs(p0) > endpoint_tol || std::abs(p1) > endpoint_tol)
    std::fprintf(stderr,
                 "sine_coefficients: warning: endpoint values P(0)=%g P(pi)=%g "
                 "exceed %g; the expansion forces them to zero\n",
                 p0, p1, endpoint_tol);

  const int sub = resolved_subintervals(quad, N);
  SineSeries series;
  series.coeffs.resize(N);
  std::vector<double> refined(N);
  for (int n = 1; n <= N; ++n) {
    auto f = [&](double x) { return std::sin(n * x) * P(x); };
    series.coeffs[n - 1] = 2.0 / M_PI * integrate(f, 0.0, M_PI, sub, quad.points);
    if (quad_error != nullptr)
      refined[n - 1] = 2.0 / M_PI * integrate(f, 0.0, M_PI, 2 * sub, quad.points);
  }
  if (quad_error != nullptr) {
    double worst = 0.0;
    for (int n = 0; n < N; ++n)
      worst = std::max(worst, std::abs(series.coeffs[n] - refined[n]));
    *quad_error = worst;
  }
  return series;
}

double dirichlet_solve(const SineSeries& series, double a, double x, double y) {
  if (x < 0.0 || x > M_PI)
    throw std::invalid_argument("dirichlet_solve: x outside [0, pi]");
  double s = 0.0;
  for (int n = series.order(); n >= 1; --n)
    s += series.coeffs[n - 1] * sinh_ratio(n, y, a) * std::sin(n * x);
  return s;
}

SineSeries dtn_map(const SineSeries& series, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("dtn_map: a must be positive");
  SineSeries out;
  out.coeffs.resize(series.coeffs.size());
  for (int n = 1; n <= series.order(); ++n)
    out.coeffs[n - 1] = n * coth(n * a) * series.coeffs[n - 1];
  return out;
}

SpectralSystem assemble_spectral_system(const LongBearingConfig& cfg, int N,
                                        const QuadratureSpec& quad) {
  return assemble_spectral_system(
      cfg, N, quad, [&cfg](double x) { return film_slope_long(x, cfg); });
}

SpectralSystem assemble_spectral_system(const LongBearingConfig& cfg, int N,
                                        const QuadratureSpec& quad,
                                        const std::function<double(double)>& forcing) {
  validate(cfg);
  if (N < 1) throw std::invalid_argument("assemble_spectral_system: N must be >= 1");
  const int sub = resolved_subintervals(quad, N);

  SpectralSystem sys{DenseSymmetricMatrix(static_cast<std::size_t>(N)),
                     std::vector<double>(N), cfg.a, N};
  auto h3 = [&cfg](double x) {
    const double h = film_height_long(x, cfg);
    return h * h * h;
  };
  for (int n = 1; n <= N; ++n) {
    sys.rhs[n - 1] = cfg.k3 * integrate(
        [&](double x) { return forcing(x) * std::sin(n * x); }, 0.0, M_PI, sub,
        quad.points);
    for (int k = n; k <= N; ++k) {
      double entry = cfg.k1 * static_cast<double>(n) * k *
                     integrate(
                         [&](double x) {
                           return h3(x) * std::cos(n * x) * std::cos(k * x);
                         },
                         0.0, M_PI, sub, quad.points);
      if (k == n) entry += M_PI / 2.0 * n * coth(n * cfg.a);
      sys.matrix.at(n - 1, k - 1) = entry;
      sys.matrix.at(k - 1, n - 1) = entry;
    }
  }
  return sys;
}

SineSeries solve_long_bearing(const SpectralSystem& system, double residual_tol) {
  SineSeries out;
  out.coeffs = system.matrix.cholesky_solve(system.rhs);

  std::vector<double> check;
  system.matrix.apply(out.coeffs, check);
  double scale = 1.0;
  for (double v : system.rhs) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < check.size(); ++i) {
    if (std::abs(check[i] - system.rhs[i]) > residual_tol * scale) {
      std::ostringstream msg;
      msg << "solve_long_bearing: residual " << std::abs(check[i] - system.rhs[i])
          << " at mode " << i + 1 << " exceeds tolerance";
      throw std::runtime_error(msg.str());
    }
  }
  return out;
}

CavitationSystem assemble_cavitation_system(const LongBearingConfig& cfg, int N,
                                            int M) {
  return assemble_cavitation_system(
      cfg, N, M, [&cfg](double x) { return film_slope_long(x, cfg); });
}

CavitationSystem assemble_cavitation_system(const LongBearingConfig& cfg, int N,
                                            int M,
                                            const std::function<double(double)>& forcing) {
  validate(cfg);
  if (M < 16) throw std::invalid_argument("assemble_cavitation_system: M must be >= 16");
  if (N < 1) throw std::invalid_argument("assemble_cavitation_system: N must be >= 1");

  const int unknowns = M - 1;
  const double dx = M_PI / M;
  CavitationSystem sys{DenseSymmetricMatrix(static_cast<std::size_t>(unknowns)),
                       std::vector<double>(unknowns, 0.0),
                       std::vector<double>(M + 1)};
  for (int j = 0; j <= M; ++j) sys.nodes[j] = j * dx;

  // Local h^3 stiffness; 3-point Gauss per element.
  GaussLegendre rule(3);
  auto h3 = [&cfg](double x) {
    const double h = film_height_long(x, cfg);
    return h * h * h;
  };
  for (int e = 0; e < M; ++e) {
    const double left = e * dx;
    double ih3 = 0.0;
    double fl = 0.0, fr = 0.0;  // load moments against the two element hats
    for (int q = 0; q < 3; ++q) {
      const double x = left + 0.5 * dx * (rule.nodes()[q] + 1.0);
      const double w = 0.5 * dx * rule.weights()[q];
      ih3 += w * h3(x);
      const double t = (x - left) / dx;
      const double fv = cfg.k3 * forcing(x);
      fl += w * fv * (1.0 - t);
      fr += w * fv * t;
    }
    const double k = cfg.k1 * ih3 / (dx * dx);
    const int il = e - 1, ir = e;  // unknown indices of nodes e and e+1
    if (il >= 0) {
      sys.matrix.at(il, il) += k;
      sys.load[il] += fl;
    }
    if (ir < unknowns) {
      sys.matrix.at(ir, ir) += k;
      sys.load[ir] += fr;
    }
    if (il >= 0 && ir < unknowns) {
      sys.matrix.at(il, ir) -= k;
      sys.matrix.at(ir, il) -= k;
    }
  }

  // Nonlocal DtN term: (pi/2) (2/M)^2 S^T diag(n coth(na)) S with
  // S_{nj} = sin(n j pi / M), truncated at N modes.
  const int modes = std::min(N, unknowns);
  std::vector<double> lambda(modes);
  for (int n = 1; n <= modes; ++n) lambda[n - 1] = n * coth(n * cfg.a);
  const double scale = M_PI / 2.0 * (2.0 / M) * (2.0 / M);
  std::vector<double> sn(unknowns);
  for (int n = 1; n <= modes; ++n) {
    for (int j = 1; j <= unknowns; ++j) sn[j - 1] = std::sin(n * j * M_PI / M);
    const double w = scale * lambda[n - 1];
    for (int i = 0; i < unknowns; ++i) {
      const double wi = w * sn[i];
      for (int j = i; j < unknowns; ++j) {
        sys.matrix.at(i, j) += wi * sn[j];
        if (j != i) sys.matrix.at(j, i) += wi * sn[j];
      }
    }
  }
  return sys;
}

CavitationProfile solve_long_bearing_cavitation(const LongBearingConfig& cfg,
                                                const CavitationOptions& opt) {
  return solve_long_bearing_cavitation(
      cfg, opt, [&cfg](double x) { return film_slope_long(x, cfg); });
}

CavitationProfile solve_long_bearing_cavitation(const LongBearingConfig& cfg,
                                                const CavitationOptions& opt,
                                                const std::function<double(double)>& forcing) {
  CavitationSystem sys = assemble_cavitation_system(cfg, opt.N, opt.M, forcing);
  const int unknowns = opt.M - 1;

  ObstacleProblem problem;
  problem.A = &sys.matrix;
  problem.b = sys.load;
  problem.constrained.resize(unknowns);
  for (int i = 0; i < unknowns; ++i) problem.constrained[i] = i;

  SorOptions sor;
  sor.omega = opt.omega > 0.0 ? opt.omega : sor_omega_heuristic(opt.M);
  sor.tol = opt.tol;
  sor.max_iterations = opt.max_iterations;
  sor.trace_stride = opt.trace_stride;

  CavitationProfile profile;
  std::vector<double> u = projected_sor(problem, sor, profile.report);
  if (!profile.report.converged) {
    std::ostringstream msg;
    msg << "solve_long_bearing_cavitation: projected SOR exhausted "
        << opt.max_iterations << " sweeps, last change "
        << profile.report.final_change;
    throw std::runtime_error(msg.str());
  }
  profile.x = sys.nodes;
  profile.P.assign(opt.M + 1, 0.0);
  for (int i = 0; i < unknowns; ++i) profile.P[i + 1] = u[i];
  return profile;
}

double explicit_small_eccentricity_boundary(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  return std::sin(2.0 * x) / (2.0 * (2.0 + coth(2.0 * a)));
}

double explicit_small_eccentricity_interior(double a, double x, double y) {
  if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
  return sinh_ratio(2, y, a) * std::sin(2.0 * x) / (2.0 * (2.0 + coth(2.0 * a)));
}

double nonporous_reference(double x) { return std::sin(2.0 * x) / 4.0; }

double half_sommerfeld(double value) { return value > 0.0 ? value : 0.0; }

std::vector<double> half_sommerfeld(const std::vector<double>& profile) {
  std::vector<double> out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i)
    out[i] = half_sommerfeld(profile[i]);
  return out;
}

}  // namespace porolub
