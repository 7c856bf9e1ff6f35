#ifndef POROLUB_RUN_CONFIG_HPP
#define POROLUB_RUN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "porolub/geometry.hpp"

namespace porolub {

// Exit code 2 territory: anything wrong with the requested run itself.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode {
  LongBilateral,
  LongCavitation,
  Explicit,
  FreeBoundary,
  Coupled3dBilateral,
  Coupled3dCavitation,
  ConvergenceStudy,
};

const char* to_string(RunMode mode);
std::optional<RunMode> parse_mode(const std::string& text);

/** One solver run, fully validated. Key=value config files fill it; command
 * line flags override file values. Defaults: N=64, M=256, tol=1e-10,
 * omega=1.5, maxit=200000, grid 33x128x33, levels=3, seed=12345. */
struct RunConfig {
  RunMode mode = RunMode::LongBilateral;
  // long-bearing rectangle
  double a = 1.0;
  double eps = 0.0;
  double k1 = 1.0;
  double k3 = 1.0;
  int N = 64;
  int M = 256;
  // 3D bearing (required for the coupled3d modes)
  BearingGeometry geom{};
  int n_rho = 33;
  int n_theta = 128;
  int n_y = 33;
  // free-boundary problem
  std::string forcing = "sin2x";  // sin2x | cosx
  double length = 3.141592653589793;
  int fb_grid = 10000;
  // numerics
  double tol = 1e-10;
  double omega = 1.5;
  int maxit = 200000;
  int levels = 3;
  std::uint64_t seed = 12345;
  std::string out_dir = ".";
  // convergence-study target (a solver mode)
  std::optional<RunMode> study_target;

  // canonical "key=value\n" rendering of every knob the mode consumes,
  // stable across runs; hashed into output comments
  std::string canonical() const;
  std::uint64_t hash() const;
};

RunConfig parse_config_file(const std::string& path);
// origin labels error messages ("flag", file name, ...)
RunConfig parse_config_text(const std::string& text, const std::string& origin);

struct ConfigOverrides {
  std::optional<std::string> mode;
  std::optional<std::string> out_dir;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

void apply_overrides(RunConfig& config, const ConfigOverrides& overrides);

// Re-checks every invariant (parse_config_* already call this).
void validate(const RunConfig& config);

}  // namespace porolub

#endif
