#include "porolub/obstacle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "porolub/csv.hpp"

namespace porolub {

namespace {

void check_problem(const ObstacleProblem& p) {
  if (p.A == nullptr) throw std::invalid_argument("obstacle: matrix is null");
  const std::size_t n = p.A->size();
  if (p.b.size() != n) throw std::invalid_argument("obstacle: load size mismatch");
  for (std::size_t i : p.constrained)
    if (i >= n) throw std::invalid_argument("obstacle: constrained index out of range");
  for (std::size_t i = 0; i < n; ++i)
    if (!(p.A->diagonal(i) > 0.0))
      throw std::invalid_argument("obstacle: non-positive diagonal entry");
}

}  // namespace

double sor_omega_heuristic(int m) {
  if (m < 2) return 1.5;
  return 2.0 / (1.0 + std::sin(M_PI / m));
}

double energy(const ObstacleProblem& p, const std::vector<double>& u) {
  std::vector<double> au;
  p.A->apply(u, au);
  double quad = 0.0, lin = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    quad += u[i] * au[i];
    lin += p.b[i] * u[i];
  }
  return 0.5 * quad - lin;
}

std::vector<double> projected_sor(const ObstacleProblem& p, const SorOptions& opt,
                                  SolveReport& report) {
  check_problem(p);
  if (!(opt.omega > 0.0 && opt.omega < 2.0))
    throw std::invalid_argument("projected_sor: omega must lie in (0, 2)");
  const std::size_t n = p.A->size();

  std::vector<char> is_constrained(n, 0);
  for (std::size_t i : p.constrained) is_constrained[i] = 1;

  std::vector<double> x;
  if (opt.start != nullptr) {
    if (opt.start->size() != n)
      throw std::invalid_argument("projected_sor: start vector size mismatch");
    x = *opt.start;
    for (std::size_t i = 0; i < n; ++i)
      if (is_constrained[i] && x[i] < 0.0) x[i] = 0.0;
  } else {
    x = p.b;
    for (std::size_t i = 0; i < n; ++i)
      if (is_constrained[i] && x[i] < 0.0) x[i] = 0.0;
  }

  report = SolveReport{};
  double change = 0.0;
  int sweep = 0;
  for (; sweep < opt.max_iterations; ++sweep) {
    change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double residual = p.b[i] - p.A->row_dot(i, x);
      double next = x[i] + opt.omega * residual / p.A->diagonal(i);
      if (is_constrained[i] && next < 0.0) next = 0.0;
      change = std::max(change, std::abs(next - x[i]));
      x[i] = next;
    }
    if (opt.trace_stride > 0 && sweep % opt.trace_stride == 0)
      report.trace.push_back({sweep + 1, change, energy(p, x)});
    if (change < opt.tol) {
      ++sweep;
      break;
    }
  }

  report.iterations = sweep;
  report.final_change = change;
  report.converged = change < opt.tol;
  report.energy = energy(p, x);

  std::vector<double> r;
  p.A->apply(x, r);
  double gap = 0.0;
  for (std::size_t i : p.constrained)
    gap = std::max(gap, std::abs(x[i] * (r[i] - p.b[i])));
  report.complementarity_gap = gap;
  return x;
}

ComplementarityReport complementarity_check(const ObstacleProblem& p,
                                            const std::vector<double>& u,
                                            double tol) {
  check_problem(p);
  const std::size_t n = p.A->size();
  std::vector<char> is_constrained(n, 0);
  for (std::size_t i : p.constrained) is_constrained[i] = 1;

  std::vector<double> r;
  p.A->apply(u, r);
  for (std::size_t i = 0; i < n; ++i) r[i] -= p.b[i];

  ComplementarityReport rep;
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = true;
    if (is_constrained[i]) {
      if (first) {
        rep.min_constrained_value = u[i];
        rep.min_constrained_residual = r[i];
        first = false;
      }
      rep.min_constrained_value = std::min(rep.min_constrained_value, u[i]);
      rep.min_constrained_residual = std::min(rep.min_constrained_residual, r[i]);
      rep.max_gap = std::max(rep.max_gap, std::abs(u[i] * r[i]));
      ok = u[i] >= -tol && r[i] >= -tol && std::abs(u[i] * r[i]) <= tol;
    } else {
      rep.max_free_residual = std::max(rep.max_free_residual, std::abs(r[i]));
      ok = std::abs(r[i]) <= tol;
    }
    if (!ok) {
      rep.pass = false;
      rep.violations.push_back(i);
    }
  }
  return rep;
}

void write_trace_csv(std::ostream& out, const SolveReport& report,
                     const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "sweep,max_change,energy\n";
  for (const SweepRecord& rec : report.trace)
    out << rec.sweep << ',' << format_g17(rec.max_change) << ','
        << format_g17(rec.energy) << "\n";
}

}  // namespace porolub
