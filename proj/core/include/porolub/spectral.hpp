#ifndef POROLUB_SPECTRAL_HPP
#define POROLUB_SPECTRAL_HPP

#include <functional>
#include <vector>

#include "porolub/geometry.hpp"
#include "porolub/matrix.hpp"
#include "porolub/obstacle.hpp"
#include "porolub/quadrature.hpp"

namespace porolub {

/** Truncated expansion P(x) = sum_n b_n sin(nx) on [0, pi]. The boundary
 * values P(0) = P(pi) = 0 are built into the basis. */
struct SineSeries {
  std::vector<double> coeffs;  // b_1 .. b_N

  int order() const { return static_cast<int>(coeffs.size()); }
  double evaluate(double x) const;
  double derivative(double x) const;
};

/** Galerkin system of the long-bearing surface problem in the sine basis:
 *   matrix[n][k] = k1 * int h^3(x) nk cos(nx)cos(kx) dx
 *                  + (pi/2) n coth(na) delta_nk
 *   rhs[n]      = k3 * int forcing(x) sin(nx) dx
 * The matrix is symmetric positive definite; coercivity is bounded below by
 * (1-eps)^3 in the H^1_0 sine metric. */
struct SpectralSystem {
  DenseSymmetricMatrix matrix;
  std::vector<double> rhs;
  double a = 0.0;
  int order = 0;
};

// coth for positive arguments; stable for large z.
double coth(double z);

// sinh(n y) / sinh(n a) evaluated as exp(n(y-a)) (1 - e^{-2ny}) / (1 - e^{-2na})
// so large n*a cannot overflow. Requires 0 <= y <= a.
double sinh_ratio(int n, double y, double a);

/** Sine-moment analysis b_n = (2/pi) int_0^pi sin(n xi) P(xi) d xi by
 * composite Gauss-Legendre quadrature. Warns on stderr when |P(0)| or
 * |P(pi)| exceeds endpoint_tol. If quad_error is non-null it receives a
 * refinement-based estimate of the worst coefficient quadrature error. */
SineSeries sine_coefficients(const std::function<double(double)>& P, int N,
                             const QuadratureSpec& quad = {},
                             double* quad_error = nullptr,
                             double endpoint_tol = 1e-8);

/** Harmonic extension of a sine-series boundary value into the rectangle
 * (0,pi) x (0,a): p(x,y) = sum b_n sinh(ny) sin(nx) / sinh(na). Exact partial
 * sum of the truncated series. Requires 0 <= x <= pi, 0 <= y <= a. */
double dirichlet_solve(const SineSeries& series, double a, double x, double y);

/** Dirichlet-to-Neumann image: the normal flux of the harmonic extension at
 * y = a has sine coefficients n coth(na) b_n. */
SineSeries dtn_map(const SineSeries& series, double a);

SpectralSystem assemble_spectral_system(const LongBearingConfig& cfg, int N,
                                        const QuadratureSpec& quad = {});
// Same stiffness, caller-supplied forcing in place of h'(x).
SpectralSystem assemble_spectral_system(const LongBearingConfig& cfg, int N,
                                        const QuadratureSpec& quad,
                                        const std::function<double(double)>& forcing);

/** Cholesky solve of the Galerkin system. Throws std::runtime_error if the
 * assembled matrix fails to be positive definite or the residual exceeds
 * residual_tol (both signal an assembly bug). */
SineSeries solve_long_bearing(const SpectralSystem& system,
                              double residual_tol = 1e-8);

/** Nodal discretization used for the unilateral (cavitating) problem:
 * piecewise-linear elements on M equal intervals carry the local h^3
 * stiffness; the nonlocal DtN term is realized through a type-I discrete
 * sine transform of the nodal values, truncated at N modes. The result is a
 * dense SPD matrix suitable for projected SOR with every interior node
 * constrained. */
struct CavitationSystem {
  DenseSymmetricMatrix matrix;     // (M-1) x (M-1)
  std::vector<double> load;        // FE load vector of the forcing
  std::vector<double> nodes;       // M+1 grid points on [0, pi]
};

CavitationSystem assemble_cavitation_system(const LongBearingConfig& cfg, int N,
                                            int M);
CavitationSystem assemble_cavitation_system(const LongBearingConfig& cfg, int N,
                                            int M,
                                            const std::function<double(double)>& forcing);

struct CavitationProfile {
  std::vector<double> x;  // M+1 nodes
  std::vector<double> P;  // nodal pressure, >= 0, zero at both ends
  SolveReport report;
};

struct CavitationOptions {
  int N = 64;             // DtN truncation order
  int M = 256;            // nodal intervals, M >= 16
  double tol = 1e-10;
  double omega = 0.0;     // 0 = near-optimal heuristic for the grid
  int max_iterations = 200000;
  int trace_stride = 1;
};

CavitationProfile solve_long_bearing_cavitation(const LongBearingConfig& cfg,
                                                const CavitationOptions& opt = {});
CavitationProfile solve_long_bearing_cavitation(const LongBearingConfig& cfg,
                                                const CavitationOptions& opt,
                                                const std::function<double(double)>& forcing);

/** Closed-form small-eccentricity solution at matrix thickness a:
 * boundary P(x) = sin(2x) / (2 [2 + coth(2a)]) and interior
 * p(x,y) = sinh(2y) sin(2x) / (2 sinh(2a) [2 + coth(2a)]). */
double explicit_small_eccentricity_boundary(double a, double x);
double explicit_small_eccentricity_interior(double a, double x, double y);

// Non-porous counterpart of the small-eccentricity problem: P0(x) = sin(2x)/4.
double nonporous_reference(double x);

// Half-Sommerfeld clipping: pointwise max(P, 0).
std::vector<double> half_sommerfeld(const std::vector<double>& profile);
double half_sommerfeld(double value);

}  // namespace porolub

#endif
