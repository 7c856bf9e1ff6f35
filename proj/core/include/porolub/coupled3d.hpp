#ifndef POROLUB_COUPLED3D_HPP
#define POROLUB_COUPLED3D_HPP

#include <cstddef>
#include <vector>

#include "porolub/geometry.hpp"
#include "porolub/matrix.hpp"
#include "porolub/obstacle.hpp"

namespace porolub {

/** Vertex-centered grid on the annulus: rho_i = R1 + i drho (i = 0..n_rho-1),
 * theta_j = j dtheta (j = 0..n_theta-1, periodic), y_k = k dy
 * (k = 0..n_y-1). Dirichlet surfaces: rho = R1, y = 0, y = L. The film
 * surface rho = R2 carries active unknowns. */
struct CylindricalGrid {
  int n_rho;
  int n_theta;
  int n_y;
};

void validate(const CylindricalGrid& grid);

/** Nodal pressure over the full grid; Dirichlet nodes stay exactly zero and
 * theta indexing wraps. */
struct PressureField {
  CylindricalGrid grid{};
  std::vector<double> values;

  double at(int i, int j, int k) const {
    const int nt = grid.n_theta;
    j %= nt;
    if (j < 0) j += nt;
    return values[(static_cast<std::size_t>(i) * nt + j) * grid.n_y + k];
  }
  double& at(int i, int j, int k) {
    const int nt = grid.n_theta;
    j %= nt;
    if (j < 0) j += nt;
    return values[(static_cast<std::size_t>(i) * nt + j) * grid.n_y + k];
  }
};

/** Assembled discrete weak form: the volume Dirichlet energy in cylindrical
 * coordinates plus the h^3-weighted tangential film stiffness on the surface
 * rho = R2, with the k3 h'(theta) load on the surface. Edge-midpoint
 * coefficients and trapezoid end-weights in rho realize the rho dtheta drho dy
 * measure; the matrix is SPD by construction. */
class CoupledSystem {
 public:
  CoupledSystem(BearingGeometry geom, CylindricalGrid grid,
                ReynoldsCoefficients coeffs);

  const BearingGeometry& geometry() const { return geom_; }
  const CylindricalGrid& grid() const { return grid_; }
  const ReynoldsCoefficients& coefficients() const { return coeffs_; }

  double drho() const { return drho_; }
  double dtheta() const { return dtheta_; }
  double dy() const { return dy_; }
  double rho(int i) const { return geom_.R1 + i * drho_; }

  // -1 for Dirichlet nodes, otherwise the unknown index.
  long long unknown_index(int i, int j, int k) const;
  std::size_t unknown_count() const;

  const CsrMatrix& matrix() const { return A_; }
  const std::vector<double>& load() const { return b_; }
  const std::vector<std::size_t>& surface_unknowns() const { return surface_; }

  PressureField scatter(const std::vector<double>& active) const;
  std::vector<double> gather(const PressureField& field) const;

 private:
  friend CoupledSystem assemble_coupled_system(const BearingGeometry&,
                                               const CylindricalGrid&,
                                               const ReynoldsCoefficients&);
  BearingGeometry geom_;
  CylindricalGrid grid_;
  ReynoldsCoefficients coeffs_;
  double drho_, dtheta_, dy_;
  CsrMatrix A_;
  std::vector<double> b_;
  std::vector<std::size_t> surface_;
};

// Coefficients derived from the geometry.
CoupledSystem assemble_coupled_system(const BearingGeometry& geom,
                                      const CylindricalGrid& grid);
// Caller-supplied coefficients (decouples k2 from L, used by consistency
// studies against the long-bearing reduction).
CoupledSystem assemble_coupled_system(const BearingGeometry& geom,
                                      const CylindricalGrid& grid,
                                      const ReynoldsCoefficients& coeffs);

/** Jacobi-preconditioned CG solve of the bilateral problem. Throws
 * std::runtime_error on non-convergence, reporting iterations and residual. */
PressureField solve_bilateral(const CoupledSystem& sys, double tol = 1e-12,
                              int max_iterations = 50000,
                              CgResult* stats = nullptr);

/** Unilateral solve: projected SOR with only the film-surface unknowns
 * constrained at zero; matrix pressure inside the annulus may go negative.
 * omega == 0 picks the near-optimal heuristic for the grid. */
PressureField solve_unilateral(const CoupledSystem& sys, double tol = 1e-10,
                               int max_iterations = 200000,
                               SolveReport* report = nullptr,
                               double omega = 0.0, int trace_stride = 0);

// J(u) = u'Au - 2 b'u; twice the variational energy, no 1/2 in front.
double functional_J(const CoupledSystem& sys, const PressureField& u);

/** Discrete norm pairing the volume gradient term with the k1/k2-weighted
 * surface tangential term. Unlike the bilinear form, the surface term
 * carries no h^3 weight. */
double h100_norm(const CoupledSystem& sys, const PressureField& u);

/** Independent smoothness check: max |cylindrical Laplacian| of the field by
 * fourth-order central differences over nodes in the fixed interior band
 * rho in [R1 + d/4, R2 - d/4], y in [L/4, 3L/4] (d = R2 - R1). Decreases at
 * second order when the field converges to a harmonic function. */
double interior_laplacian_residual(const CoupledSystem& sys,
                                   const PressureField& u);

// max_j |p(i, -j, k) + p(i, j, k)| over the grid, normalized by max |p|.
double theta_antisymmetry(const PressureField& field);

/** Pointwise residual of the discrete Reynolds balance at a film-surface
 * node: the surface row of the weak form divided by the node's surface
 * measure, which tends to the strong equation where the solution is smooth
 * and positive. */
double surface_equation_residual(const CoupledSystem& sys,
                                 const PressureField& u, int j, int k);

}  // namespace porolub

#endif
