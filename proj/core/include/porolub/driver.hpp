#ifndef POROLUB_DRIVER_HPP
#define POROLUB_DRIVER_HPP

#include <map>
#include <string>
#include <vector>

#include "porolub/run_config.hpp"

namespace porolub {

/** Outcome of one dispatched run: echoed parameters, headline scalars and
 * wall time. exit_code follows the CLI contract: 0 ok, 2 config error,
 * 3 solver failure. */
struct RunSummary {
  std::string mode;
  std::string config_hash;
  std::string parameters;                      // canonical key=value block
  std::map<std::string, std::string> scalars;  // headline results, sorted
  double wall_seconds = 0.0;
  bool ok = true;
  std::string failure;
  int exit_code = 0;

  std::string text() const;
};

/** Executes the configured run, writes that mode's CSV outputs plus
 * summary.txt under config.out_dir. Solver failures are reported in the
 * summary (exit_code 3), not thrown. */
RunSummary run(const RunConfig& config);

struct StudyRow {
  int level;
  std::string resolution;
  std::vector<double> probes;
  double cauchy_diff;     // NaN on the first level
  double observed_order;  // NaN until two diffs exist
};

/** Dyadic refinement study of config.study_target (or of config.mode when it
 * is a solver mode); writes study.csv and returns the table. */
std::vector<StudyRow> convergence_study(const RunConfig& config,
                                        RunSummary* summary = nullptr);

/** Porous vs non-porous comparison of the small-eccentricity model at the
 * configured thickness a: writes compare.csv with P, P0 and their ratio. */
RunSummary compare_porous_nonporous(const RunConfig& config);

}  // namespace porolub

#endif
