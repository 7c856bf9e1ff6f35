#include "porolub/driver.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "porolub/coupled3d.hpp"
#include "porolub/csv.hpp"
#include "porolub/free_boundary.hpp"
#include "porolub/spectral.hpp"

namespace porolub {

namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.out_dir);
  const fs::path path = fs::path(config.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  return out;
}

std::string hash_comment(const RunConfig& config) {
  return "config_hash=" + hash_hex(config.hash());
}

void put(RunSummary& summary, const std::string& key, double value) {
  summary.scalars[key] = format_g17(value);
}

LongBearingConfig long_config(const RunConfig& config) {
  return LongBearingConfig{config.a, config.eps, config.k1, config.k3};
}

ForcingFunction make_forcing(const RunConfig& config) {
  if (config.forcing == "cosx")
    return ForcingFunction([](double x) { return std::cos(x); }, config.length);
  return ForcingFunction([](double x) { return std::sin(2.0 * x); },
                         config.length);
}

// ---- per-mode runners -----------------------------------------------------

void run_long_bearing(const RunConfig& config, RunSummary& summary) {
  const LongBearingConfig cfg = long_config(config);

  SpectralSystem system = assemble_spectral_system(cfg, config.N, {});
  SineSeries series = solve_long_bearing(system);

  CavitationOptions cav;
  cav.N = config.N;
  cav.M = config.M;
  cav.tol = config.tol;
  cav.max_iterations = config.maxit;
  CavitationProfile cavity = solve_long_bearing_cavitation(cfg, cav);

  {
    std::ofstream out = open_output(config, "profiles.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "x,P_bilateral,P_cavitation,P_halfsommerfeld,P_nonporous\n";
    for (std::size_t j = 0; j < cavity.x.size(); ++j) {
      const double x = cavity.x[j];
      const double bilateral = series.evaluate(x);
      out << format_g17(x) << ',' << format_g17(bilateral) << ','
          << format_g17(cavity.P[j]) << ',' << format_g17(half_sommerfeld(bilateral))
          << ',' << format_g17(nonporous_reference(x)) << "\n";
    }
  }
  {
    std::ofstream out = open_output(config, "field.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "x,y,p\n";
    const int nx = 65, ny = 33;
    for (int ix = 0; ix < nx; ++ix) {
      const double x = M_PI * ix / (nx - 1);
      for (int iy = 0; iy < ny; ++iy) {
        const double y = cfg.a * iy / (ny - 1);
        out << format_g17(x) << ',' << format_g17(y) << ','
            << format_g17(dirichlet_solve(series, cfg.a, x, y)) << "\n";
      }
    }
  }
  {
    std::ofstream out = open_output(config, "trace.csv");
    write_trace_csv(out, cavity.report, hash_comment(config));
  }

  double pmin = 0.0, pmax = 0.0;
  for (double x : cavity.x) {
    const double v = series.evaluate(x);
    pmin = std::min(pmin, v);
    pmax = std::max(pmax, v);
  }
  if (config.N >= 2) put(summary, "b2", series.coeffs[1]);
  put(summary, "truncation_tail", std::abs(series.coeffs.back()));
  put(summary, "P_min", pmin);
  put(summary, "P_max", pmax);
  put(summary, "cavitation_sweeps", cavity.report.iterations);
  put(summary, "complementarity_gap", cavity.report.complementarity_gap);
  put(summary, "cavitation_energy", cavity.report.energy);
}

void run_explicit(const RunConfig& config, RunSummary& summary) {
  const double a = config.a;

  // the closed form answers the small-eccentricity model: h = 1, forcing
  // sin(2x); the cavitation column carries the true unilateral solve of the
  // same model
  LongBearingConfig model{a, 0.0, config.k1, config.k3};
  CavitationOptions cav;
  cav.N = config.N;
  cav.M = config.M;
  cav.tol = config.tol;
  cav.max_iterations = config.maxit;
  CavitationProfile cavity = solve_long_bearing_cavitation(
      model, cav, [](double x) { return std::sin(2.0 * x); });

  {
    std::ofstream out = open_output(config, "profiles.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "x,P_bilateral,P_cavitation,P_halfsommerfeld,P_nonporous\n";
    for (std::size_t j = 0; j < cavity.x.size(); ++j) {
      const double x = cavity.x[j];
      const double bilateral = explicit_small_eccentricity_boundary(a, x);
      out << format_g17(x) << ',' << format_g17(bilateral) << ','
          << format_g17(cavity.P[j]) << ',' << format_g17(half_sommerfeld(bilateral))
          << ',' << format_g17(nonporous_reference(x)) << "\n";
    }
  }
  {
    std::ofstream out = open_output(config, "field.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "x,y,p\n";
    const int nx = 65, ny = 33;
    for (int ix = 0; ix < nx; ++ix) {
      const double x = M_PI * ix / (nx - 1);
      for (int iy = 0; iy < ny; ++iy) {
        const double y = a * iy / (ny - 1);
        out << format_g17(x) << ',' << format_g17(y) << ','
            << format_g17(explicit_small_eccentricity_interior(a, x, y)) << "\n";
      }
    }
  }

  put(summary, "b2", 1.0 / (2.0 * (2.0 + coth(2.0 * a))));
  put(summary, "P_quarter_pi", explicit_small_eccentricity_boundary(a, M_PI / 4));
  put(summary, "cavitation_sweeps", cavity.report.iterations);
}

void run_free_boundary(const RunConfig& config, RunSummary& summary) {
  const ForcingFunction f = make_forcing(config);
  FreeBoundarySolution sol = solve_free_boundary(f, config.tol);
  const OverdeterminedReport report = verify_overdetermined(sol, f, config.fb_grid);

  {
    std::ofstream out = open_output(config, "profile.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "x,u\n";
    const std::vector<double> u = sol.nodal(513, f.length());
    for (int i = 0; i < 513; ++i) {
      const double x = f.length() * i / 512;
      out << format_g17(x) << ',' << format_g17(u[i]) << "\n";
    }
  }

  put(summary, "xi_bar", sol.xi_bar());
  put(summary, "residual_interior", report.interior_residual);
  put(summary, "residual_u0", report.left_value);
  put(summary, "residual_u_xi", report.right_value);
  put(summary, "residual_du_xi", report.right_derivative);
}

void run_coupled3d(const RunConfig& config, RunSummary& summary) {
  const CylindricalGrid grid{config.n_rho, config.n_theta, config.n_y};
  CoupledSystem sys = assemble_coupled_system(config.geom, grid);

  PressureField field;
  if (config.mode == RunMode::Coupled3dBilateral) {
    CgResult stats;
    field = solve_bilateral(sys, config.tol, config.maxit, &stats);
    put(summary, "iterations", stats.iterations);
    put(summary, "residual", stats.relative_residual);
  } else {
    SolveReport report;
    field = solve_unilateral(sys, config.tol, config.maxit, &report,
                             config.omega_explicit ? config.omega : 0.0, 16);
    put(summary, "iterations", report.iterations);
    put(summary, "residual", report.final_change);
    put(summary, "complementarity_gap", report.complementarity_gap);
    put(summary, "energy", report.energy);
    std::ofstream out = open_output(config, "trace.csv");
    write_trace_csv(out, report, hash_comment(config));
  }

  {
    std::ofstream out = open_output(config, "field.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "rho,theta,y,p\n";
    for (int i = 0; i < grid.n_rho; ++i)
      for (int j = 0; j < grid.n_theta; ++j)
        for (int k = 0; k < grid.n_y; ++k)
          out << format_g17(sys.rho(i)) << ',' << format_g17(j * sys.dtheta())
              << ',' << format_g17(k * sys.dy()) << ','
              << format_g17(field.at(i, j, k)) << "\n";
  }
  const int last = grid.n_rho - 1;
  double smin = 0.0, smax = 0.0;
  {
    std::ofstream out = open_output(config, "surface.csv");
    out << "# " << hash_comment(config) << "\n";
    out << "theta,y,p_surface\n";
    for (int j = 0; j < grid.n_theta; ++j)
      for (int k = 0; k < grid.n_y; ++k) {
        const double v = field.at(last, j, k);
        smin = std::min(smin, v);
        smax = std::max(smax, v);
        out << format_g17(j * sys.dtheta()) << ',' << format_g17(k * sys.dy())
            << ',' << format_g17(v) << "\n";
      }
  }
  put(summary, "J", functional_J(sys, field));
  put(summary, "surface_p_min", smin);
  put(summary, "surface_p_max", smax);
}

}  // namespace

std::string RunSummary::text() const {
  std::ostringstream out;
  out << "mode=" << mode << "\n";
  out << "config_hash=" << config_hash << "\n";
  out << "# parameters\n" << parameters;
  out << "# results\n";
  out << "status=" << (ok ? "ok" : "failed") << "\n";
  if (!ok) out << "failure=" << failure << "\n";
  for (const auto& [key, value] : scalars) out << key << '=' << value << "\n";
  out << "wall_seconds=" << format_g17(wall_seconds) << "\n";
  return out.str();
}

RunSummary run(const RunConfig& config) {
  RunSummary summary;
  summary.mode = to_string(config.mode);
  summary.config_hash = hash_hex(config.hash());
  summary.parameters = config.canonical();

  const auto start = std::chrono::steady_clock::now();
  try {
    switch (config.mode) {
      case RunMode::LongBilateral:
      case RunMode::LongCavitation:
        run_long_bearing(config, summary);
        break;
      case RunMode::Explicit:
        run_explicit(config, summary);
        break;
      case RunMode::FreeBoundary:
        run_free_boundary(config, summary);
        break;
      case RunMode::Coupled3dBilateral:
      case RunMode::Coupled3dCavitation:
        run_coupled3d(config, summary);
        break;
      case RunMode::ConvergenceStudy:
        convergence_study(config, &summary);
        break;
    }
  } catch (const ConfigError& err) {
    summary.ok = false;
    summary.failure = err.what();
    summary.exit_code = 2;
  } catch (const std::exception& err) {
    summary.ok = false;
    summary.failure = err.what();
    summary.exit_code = 3;
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::ofstream out = open_output(config, "summary.txt");
  out << summary.text();
  return summary;
}

namespace {

// One study level: returns probe values plus a resolution label.
using LevelRunner = std::function<std::vector<double>(int level, std::string&)>;

std::vector<StudyRow> study_table(const RunConfig& config, LevelRunner runner) {
  std::vector<StudyRow> rows;
  double previous_diff = std::numeric_limits<double>::quiet_NaN();
  for (int level = 0; level < config.levels; ++level) {
    StudyRow row;
    row.level = level;
    row.probes = runner(level, row.resolution);
    row.cauchy_diff = std::numeric_limits<double>::quiet_NaN();
    row.observed_order = std::numeric_limits<double>::quiet_NaN();
    if (level > 0) {
      double diff = 0.0;
      for (std::size_t p = 0; p < row.probes.size(); ++p)
        diff = std::max(diff, std::abs(row.probes[p] - rows.back().probes[p]));
      row.cauchy_diff = diff;
      if (level > 1 && diff > 0.0)
        row.observed_order = std::log2(previous_diff / diff);
      previous_diff = diff;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<StudyRow> convergence_study(const RunConfig& config,
                                        RunSummary* summary) {
  if (config.levels < 3)
    throw ConfigError("convergence study needs levels >= 3");
  const RunMode target = config.study_target.value_or(config.mode);
  if (target == RunMode::ConvergenceStudy)
    throw ConfigError("convergence study target must be a solver mode");

  LevelRunner runner;
  switch (target) {
    case RunMode::LongBilateral:
    case RunMode::Explicit: {
      runner = [&config](int level, std::string& label) {
        const int N = config.N << level;
        label = "N=" + std::to_string(N);
        const LongBearingConfig cfg = long_config(config);
        SineSeries series = solve_long_bearing(assemble_spectral_system(cfg, N, {}));
        std::vector<double> probes = {series.evaluate(M_PI / 4),
                                      series.evaluate(M_PI / 3)};
        if (config.eps == 0.0) {
          // spectrally exact case: report the gap to the closed form instead
          // of relying on Cauchy differences that are already at roundoff
          probes.push_back(std::abs(series.evaluate(M_PI / 4)));
        }
        return probes;
      };
      break;
    }
    case RunMode::LongCavitation: {
      runner = [&config](int level, std::string& label) {
        const int M = config.M << level;
        label = "M=" + std::to_string(M);
        CavitationOptions cav;
        cav.N = config.N;
        cav.M = M;
        cav.tol = config.tol;
        cav.max_iterations = config.maxit;
        CavitationProfile profile =
            solve_long_bearing_cavitation(long_config(config), cav);
        const int quarter = M / 4;
        double extent = 0.0;
        for (std::size_t j = 0; j < profile.P.size(); ++j)
          if (profile.P[j] > 0.0) extent = profile.x[j];
        return std::vector<double>{profile.P[quarter], extent};
      };
      break;
    }
    case RunMode::FreeBoundary: {
      runner = [&config](int level, std::string& label) {
        const int grid = config.fb_grid << level;
        label = "grid=" + std::to_string(grid);
        const ForcingFunction f = make_forcing(config);
        FreeBoundarySolution sol = solve_free_boundary(f, config.tol);
        const OverdeterminedReport rep = verify_overdetermined(sol, f, grid);
        return std::vector<double>{rep.interior_residual};
      };
      break;
    }
    case RunMode::Coupled3dBilateral:
    case RunMode::Coupled3dCavitation: {
      runner = [&config, target](int level, std::string& label) {
        const int scale = 1 << level;
        CylindricalGrid grid{(config.n_rho - 1) * scale + 1,
                             config.n_theta * scale,
                             (config.n_y - 1) * scale + 1};
        label = std::to_string(grid.n_rho) + "x" + std::to_string(grid.n_theta) +
                "x" + std::to_string(grid.n_y);
        CoupledSystem sys = assemble_coupled_system(config.geom, grid);
        PressureField field =
            target == RunMode::Coupled3dBilateral
                ? solve_bilateral(sys, config.tol, config.maxit)
                : solve_unilateral(sys, config.tol, config.maxit);
        // fixed physical probes present on every level
        const int last = grid.n_rho - 1;
        const int jq = grid.n_theta / 4;
        const int kmid = (grid.n_y - 1) / 2;
        return std::vector<double>{
            field.at(last, jq, kmid), field.at(last, 3 * jq, kmid),
            field.at(last / 2 + (last % 2 ? 0 : 0), jq, kmid),
            interior_laplacian_residual(sys, field)};
      };
      break;
    }
    default:
      throw ConfigError("convergence study target not supported");
  }

  std::vector<StudyRow> rows = study_table(config, runner);

  std::ofstream out = open_output(config, "study.csv");
  out << "# config_hash=" << hash_hex(config.hash()) << "\n";
  out << "level,resolution";
  for (std::size_t p = 0; p < rows.front().probes.size(); ++p)
    out << ",probe" << p + 1;
  out << ",cauchy_diff,observed_order\n";
  for (const StudyRow& row : rows) {
    out << row.level << ',' << row.resolution;
    for (double v : row.probes) out << ',' << format_g17(v);
    out << ',' << format_g17(row.cauchy_diff) << ','
        << format_g17(row.observed_order) << "\n";
  }

  if (summary != nullptr) {
    put(*summary, "levels", config.levels);
    if (rows.size() > 2 && std::isfinite(rows.back().observed_order))
      put(*summary, "observed_order", rows.back().observed_order);
  }
  return rows;
}

RunSummary compare_porous_nonporous(const RunConfig& config) {
  RunSummary summary;
  summary.mode = "compare";
  summary.config_hash = hash_hex(config.hash());
  summary.parameters = config.canonical();
  const auto start = std::chrono::steady_clock::now();

  try {
    // small-eccentricity model: h = 1, forcing sin(2x)
    LongBearingConfig model{config.a, 0.0, config.k1, config.k3};
    SpectralSystem system = assemble_spectral_system(
        model, config.N, {}, [](double x) { return std::sin(2.0 * x); });
    SineSeries series = solve_long_bearing(system);

    std::ofstream out = open_output(config, "compare.csv");
    out << "# config_hash=" << hash_hex(config.hash()) << "\n";
    out << "x,P,P0,ratio\n";
    const int probes = 128;
    double worst_ratio = 0.0;
    for (int i = 0; i < probes; ++i) {
      const double x = M_PI * (i + 0.5) / probes;  // avoids sin(2x) = 0
      const double p = series.evaluate(x);
      const double p0 = nonporous_reference(x);
      const double ratio = p / p0;
      worst_ratio = std::max(worst_ratio, std::abs(ratio));
      out << format_g17(x) << ',' << format_g17(p) << ',' << format_g17(p0)
          << ',' << format_g17(ratio) << "\n";
    }
    put(summary, "b2", series.coeffs[1]);
    put(summary, "max_abs_ratio", worst_ratio);
  } catch (const ConfigError& err) {
    summary.ok = false;
    summary.failure = err.what();
    summary.exit_code = 2;
  } catch (const std::exception& err) {
    summary.ok = false;
    summary.failure = err.what();
    summary.exit_code = 3;
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::ofstream out = open_output(config, "summary.txt");
  out << summary.text();
  return summary;
}

}  // namespace porolub
