#ifndef POROLUB_OBSTACLE_HPP
#define POROLUB_OBSTACLE_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "porolub/matrix.hpp"

namespace porolub {

/** Finite-dimensional obstacle problem: minimize 1/2 u'Au - b'u subject to
 * u_i >= 0 for i in `constrained` (other unknowns are free). A is not owned;
 * the caller keeps it alive for the problem's lifetime. */
struct ObstacleProblem {
  const SymmetricMatrix* A = nullptr;
  std::vector<double> b;
  std::vector<std::size_t> constrained;
};

struct SweepRecord {
  int sweep;
  double max_change;
  double energy;
};

struct SolveReport {
  int iterations = 0;
  double final_change = 0.0;
  double complementarity_gap = 0.0;  // max |u_i r_i| over constrained i
  double energy = 0.0;               // 1/2 u'Au - b'u at the returned iterate
  bool converged = false;
  std::vector<SweepRecord> trace;    // filled every trace_stride sweeps
};

struct SorOptions {
  double omega = 1.5;           // relaxation, must lie in (0, 2)
  double tol = 1e-10;           // stop when the max nodal update drops below
  int max_iterations = 100000;
  int trace_stride = 0;         // 0 disables the sweep trace
  const std::vector<double>* start = nullptr;  // default: b clamped feasible
};

/** Projected SOR: Gauss-Seidel sweeps with over-relaxation, clamping
 * constrained unknowns at zero after every nodal update. The stopping rule is
 * the max-norm of the iterate change; residual norms mislead near the free
 * boundary. On max_iterations exhaustion the best iterate is returned with
 * report.converged == false. */
std::vector<double> projected_sor(const ObstacleProblem& p, const SorOptions& opt,
                                  SolveReport& report);

// omega = 2 / (1 + sin(pi/m)), the classical near-optimal choice for an
// m-interval Poisson grid; a serviceable default for the solvers here.
double sor_omega_heuristic(int m);

struct ComplementarityReport {
  bool pass = true;
  double min_constrained_value = 0.0;     // min u_i over constrained i
  double min_constrained_residual = 0.0;  // min (Au-b)_i over constrained i
  double max_gap = 0.0;                   // max |u_i (Au-b)_i| over constrained i
  double max_free_residual = 0.0;         // max |(Au-b)_i| over unconstrained i
  std::vector<std::size_t> violations;
};

/** Discrete KKT check: constrained entries need u_i >= -tol, residual
 * (Au-b)_i >= -tol and |u_i (Au-b)_i| <= tol; unconstrained entries need
 * |(Au-b)_i| <= tol. */
ComplementarityReport complementarity_check(const ObstacleProblem& p,
                                            const std::vector<double>& u,
                                            double tol);

// 1/2 u'Au - b'u
double energy(const ObstacleProblem& p, const std::vector<double>& u);

// Iteration-trace CSV: sweep, max_change, energy. `comment` lines are written
// verbatim after a leading "# ".
void write_trace_csv(std::ostream& out, const SolveReport& report,
                     const std::string& comment);

}  // namespace porolub

#endif
