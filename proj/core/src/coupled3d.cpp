#include "porolub/coupled3d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace porolub {

void validate(const CylindricalGrid& grid) {
  if (grid.n_rho < 3 || grid.n_theta < 8 || grid.n_y < 3) {
    std::ostringstream msg;
    msg << "degenerate grid " << grid.n_rho << "x" << grid.n_theta << "x"
        << grid.n_y << "; need n_rho >= 3, n_theta >= 8, n_y >= 3";
    throw std::invalid_argument(msg.str());
  }
}

CoupledSystem::CoupledSystem(BearingGeometry geom, CylindricalGrid grid,
                             ReynoldsCoefficients coeffs)
    : geom_(geom), grid_(grid), coeffs_(coeffs) {
  drho_ = (geom_.R2 - geom_.R1) / (grid_.n_rho - 1);
  dtheta_ = 2.0 * M_PI / grid_.n_theta;
  dy_ = geom_.L / (grid_.n_y - 1);
}

long long CoupledSystem::unknown_index(int i, int j, int k) const {
  if (i <= 0 || k <= 0 || k >= grid_.n_y - 1) return -1;
  j %= grid_.n_theta;
  if (j < 0) j += grid_.n_theta;
  const long long interior_y = grid_.n_y - 2;
  return ((static_cast<long long>(i - 1) * grid_.n_theta) + j) * interior_y +
         (k - 1);
}

std::size_t CoupledSystem::unknown_count() const {
  return static_cast<std::size_t>(grid_.n_rho - 1) * grid_.n_theta *
         (grid_.n_y - 2);
}

PressureField CoupledSystem::scatter(const std::vector<double>& active) const {
  PressureField field;
  field.grid = grid_;
  field.values.assign(static_cast<std::size_t>(grid_.n_rho) * grid_.n_theta *
                          grid_.n_y,
                      0.0);
  for (int i = 1; i < grid_.n_rho; ++i)
    for (int j = 0; j < grid_.n_theta; ++j)
      for (int k = 1; k < grid_.n_y - 1; ++k)
        field.at(i, j, k) = active[unknown_index(i, j, k)];
  return field;
}

std::vector<double> CoupledSystem::gather(const PressureField& field) const {
  std::vector<double> active(unknown_count(), 0.0);
  for (int i = 1; i < grid_.n_rho; ++i)
    for (int j = 0; j < grid_.n_theta; ++j)
      for (int k = 1; k < grid_.n_y - 1; ++k)
        active[unknown_index(i, j, k)] = field.at(i, j, k);
  return active;
}

namespace {

struct EdgeWeights {
  // Shared edge-weight helpers so assembly, the energy norm and tests agree
  // on one quadrature of the weak form.
  const BearingGeometry& g;
  const CylindricalGrid& grid;
  const ReynoldsCoefficients& k;
  double drho, dtheta, dy;

  double rho(int i) const { return g.R1 + i * drho; }
  // transverse trapezoid weight in rho (half cells at both radial ends)
  double wrho(int i) const {
    return (i == 0 || i == grid.n_rho - 1) ? 0.5 * drho : drho;
  }
  double wy(int k_) const {
    return (k_ == 0 || k_ == grid.n_y - 1) ? 0.5 * dy : dy;
  }
  double h3(double theta) const {
    const double h = film_height_journal(theta, g);
    return h * h * h;
  }

  // weight of the rho-edge between (i, j, k) and (i+1, j, k)
  double rho_edge(int i, int k_) const {
    return (rho(i) + 0.5 * drho) * dtheta * wy(k_) / drho;
  }
  // weight of the theta-edge between (i, j, k) and (i, j+1, k)
  double theta_edge(int i, int j, int k_) const {
    double w = (1.0 / rho(i)) * wrho(i) * wy(k_) / dtheta;
    if (i == grid.n_rho - 1)
      w += k.k1 * h3((j + 0.5) * dtheta) * g.R2 * wy(k_) / dtheta;
    return w;
  }
  // weight of the y-edge between (i, j, k) and (i, j, k+1)
  double y_edge(int i, int j) const {
    double w = rho(i) * wrho(i) * dtheta / dy;
    if (i == grid.n_rho - 1) w += k.k2 * h3(j * dtheta) * g.R2 * dtheta / dy;
    return w;
  }
  double surface_load(int j, int k_) const {
    return k.k3 * film_slope_journal(j * dtheta, g) * g.R2 * dtheta * wy(k_);
  }
};

}  // namespace

CoupledSystem assemble_coupled_system(const BearingGeometry& geom,
                                      const CylindricalGrid& grid) {
  return assemble_coupled_system(geom, grid, reynolds_coefficients(geom));
}

CoupledSystem assemble_coupled_system(const BearingGeometry& geom,
                                      const CylindricalGrid& grid,
                                      const ReynoldsCoefficients& coeffs) {
  validate(geom);
  validate(grid);
  CoupledSystem sys(geom, grid, coeffs);
  const EdgeWeights ew{geom, grid, coeffs, sys.drho_, sys.dtheta_, sys.dy_};

  const std::size_t n = sys.unknown_count();
  std::vector<Triplet> triplets;
  triplets.reserve(7 * n);
  sys.b_.assign(n, 0.0);

  const int last = grid.n_rho - 1;
  for (int i = 1; i <= last; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      for (int k = 1; k < grid.n_y - 1; ++k) {
        const std::size_t m = static_cast<std::size_t>(sys.unknown_index(i, j, k));
        double diag = 0.0;
        auto couple = [&](long long neighbor, double w) {
          diag += w;
          if (neighbor >= 0)
            triplets.push_back({m, static_cast<std::size_t>(neighbor), -w});
        };
        couple(sys.unknown_index(i - 1, j, k), ew.rho_edge(i - 1, k));
        if (i < last) couple(sys.unknown_index(i + 1, j, k), ew.rho_edge(i, k));
        couple(sys.unknown_index(i, j - 1, k), ew.theta_edge(i, j - 1, k));
        couple(sys.unknown_index(i, j + 1, k), ew.theta_edge(i, j, k));
        couple(sys.unknown_index(i, j, k - 1), ew.y_edge(i, j));
        couple(sys.unknown_index(i, j, k + 1), ew.y_edge(i, j));
        triplets.push_back({m, m, diag});
        if (i == last) {
          sys.b_[m] = ew.surface_load(j, k);
          sys.surface_.push_back(m);
        }
      }
    }
  }
  sys.A_ = CsrMatrix::from_triplets(n, std::move(triplets));
  return sys;
}

PressureField solve_bilateral(const CoupledSystem& sys, double tol,
                              int max_iterations, CgResult* stats) {
  std::vector<double> x(sys.unknown_count(), 0.0);
  CgResult result = conjugate_gradient(sys.matrix(), sys.load(), x, tol,
                                       max_iterations);
  if (stats != nullptr) *stats = result;
  if (!result.converged) {
    std::ostringstream msg;
    msg << "solve_bilateral: CG failed to converge in " << result.iterations
        << " iterations, relative residual " << result.relative_residual;
    throw std::runtime_error(msg.str());
  }
  return sys.scatter(x);
}

PressureField solve_unilateral(const CoupledSystem& sys, double tol,
                               int max_iterations, SolveReport* report,
                               double omega, int trace_stride) {
  ObstacleProblem problem;
  problem.A = &sys.matrix();
  problem.b = sys.load();
  problem.constrained = sys.surface_unknowns();

  SorOptions opt;
  const CylindricalGrid& g = sys.grid();
  opt.omega = omega > 0.0
                  ? omega
                  : sor_omega_heuristic(std::max(
                        {g.n_rho - 1, g.n_theta, g.n_y - 1}));
  opt.tol = tol;
  opt.max_iterations = max_iterations;
  opt.trace_stride = trace_stride;

  SolveReport local;
  std::vector<double> x = projected_sor(problem, opt, local);
  if (report != nullptr) *report = local;
  if (!local.converged) {
    std::ostringstream msg;
    msg << "solve_unilateral: projected SOR exhausted " << max_iterations
        << " sweeps, last change " << local.final_change;
    throw std::runtime_error(msg.str());
  }
  return sys.scatter(x);
}

double functional_J(const CoupledSystem& sys, const PressureField& u) {
  const std::vector<double> x = sys.gather(u);
  std::vector<double> ax;
  sys.matrix().apply(x, ax);
  double quad = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    quad += x[i] * ax[i];
    lin += sys.load()[i] * x[i];
  }
  return quad - 2.0 * lin;
}

double h100_norm(const CoupledSystem& sys, const PressureField& u) {
  const BearingGeometry& g = sys.geometry();
  const CylindricalGrid& grid = sys.grid();
  const EdgeWeights ew{g, grid, sys.coefficients(), sys.drho(), sys.dtheta(),
                       sys.dy()};
  double total = 0.0;
  // volume part: one pass over every edge
  for (int i = 0; i < grid.n_rho; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      for (int k = 0; k < grid.n_y; ++k) {
        const double v = u.at(i, j, k);
        if (i + 1 < grid.n_rho) {
          const double d = u.at(i + 1, j, k) - v;
          total += ew.rho_edge(i, k) * d * d;
        }
        {
          const double d = u.at(i, j + 1, k) - v;
          total += (1.0 / ew.rho(i)) * ew.wrho(i) * ew.wy(k) / ew.dtheta * d * d;
        }
        if (k + 1 < grid.n_y) {
          const double d = u.at(i, j, k + 1) - v;
          total += ew.rho(i) * ew.wrho(i) * ew.dtheta / ew.dy * d * d;
        }
      }
    }
  }
  // surface part: k1/k2 weights without the h^3 factor
  const int last = grid.n_rho - 1;
  const ReynoldsCoefficients& k = sys.coefficients();
  for (int j = 0; j < grid.n_theta; ++j) {
    for (int kk = 0; kk < grid.n_y; ++kk) {
      const double v = u.at(last, j, kk);
      {
        const double d = u.at(last, j + 1, kk) - v;
        total += k.k1 * g.R2 * ew.wy(kk) / ew.dtheta * d * d;
      }
      if (kk + 1 < grid.n_y) {
        const double d = u.at(last, j, kk + 1) - v;
        total += k.k2 * g.R2 * ew.dtheta / ew.dy * d * d;
      }
    }
  }
  return std::sqrt(total);
}

double interior_laplacian_residual(const CoupledSystem& sys,
                                   const PressureField& u) {
  const BearingGeometry& g = sys.geometry();
  const CylindricalGrid& grid = sys.grid();
  const double drho = sys.drho(), dtheta = sys.dtheta(), dy = sys.dy();
  const double band = g.R2 - g.R1;

  double worst = 0.0;
  for (int i = 2; i <= grid.n_rho - 3; ++i) {
    const double rho = sys.rho(i);
    if (rho < g.R1 + 0.25 * band || rho > g.R2 - 0.25 * band) continue;
    for (int k = 2; k <= grid.n_y - 3; ++k) {
      const double y = k * dy;
      if (y < 0.25 * g.L || y > 0.75 * g.L) continue;
      for (int j = 0; j < grid.n_theta; ++j) {
        auto v = [&](int di, int dj, int dk) {
          return u.at(i + di, j + dj, k + dk);
        };
        const double center = v(0, 0, 0);
        const double prr =
            (-v(-2, 0, 0) + 16.0 * v(-1, 0, 0) - 30.0 * center +
             16.0 * v(1, 0, 0) - v(2, 0, 0)) /
            (12.0 * drho * drho);
        const double pr =
            (v(-2, 0, 0) - 8.0 * v(-1, 0, 0) + 8.0 * v(1, 0, 0) - v(2, 0, 0)) /
            (12.0 * drho);
        const double ptt =
            (-v(0, -2, 0) + 16.0 * v(0, -1, 0) - 30.0 * center +
             16.0 * v(0, 1, 0) - v(0, 2, 0)) /
            (12.0 * dtheta * dtheta);
        const double pyy =
            (-v(0, 0, -2) + 16.0 * v(0, 0, -1) - 30.0 * center +
             16.0 * v(0, 0, 1) - v(0, 0, 2)) /
            (12.0 * dy * dy);
        const double res = prr + pr / rho + ptt / (rho * rho) + pyy;
        worst = std::max(worst, std::abs(res));
      }
    }
  }
  return worst;
}

double theta_antisymmetry(const PressureField& field) {
  const CylindricalGrid& grid = field.grid;
  double scale = 0.0;
  for (double v : field.values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < grid.n_rho; ++i)
    for (int j = 0; j < grid.n_theta; ++j)
      for (int k = 0; k < grid.n_y; ++k)
        worst = std::max(worst, std::abs(field.at(i, j, k) + field.at(i, -j, k)));
  return worst / scale;
}

double surface_equation_residual(const CoupledSystem& sys,
                                 const PressureField& u, int j, int k) {
  const BearingGeometry& g = sys.geometry();
  const ReynoldsCoefficients& kc = sys.coefficients();
  const int last = sys.grid().n_rho - 1;
  const double dtheta = sys.dtheta(), dy = sys.dy(), drho = sys.drho();
  auto h3 = [&](double theta) {
    const double h = film_height_journal(theta, g);
    return h * h * h;
  };
  const double center = u.at(last, j, k);
  // conservative central second differences for the tangential film terms
  const double flux_theta =
      (h3((j + 0.5) * dtheta) * (u.at(last, j + 1, k) - center) -
       h3((j - 0.5) * dtheta) * (center - u.at(last, j - 1, k))) /
      (dtheta * dtheta);
  const double flux_y = h3(j * dtheta) *
                        (u.at(last, j, k + 1) - 2.0 * center +
                         u.at(last, j, k - 1)) /
                        (dy * dy);
  // one-sided radial flux, the natural-boundary reading of the weak form
  const double p_rho = (center - u.at(last - 1, j, k)) / drho;
  return -kc.k1 * flux_theta - kc.k2 * flux_y + p_rho -
         kc.k3 * film_slope_journal(j * dtheta, g);
}

}  // namespace porolub
