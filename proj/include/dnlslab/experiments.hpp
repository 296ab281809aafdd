#pragma once
// Experiment orchestration: configuration, the run commands behind the CLI
// subcommands, persistence (CSV + SVG + JSON manifest), and pass/fail
// bookkeeping. The manifest is written last, so its presence marks a
// completed run and lists every emitted file.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "dnlslab/config.hpp"

namespace dnlslab {

struct ExperimentConfig {
  std::string kind; // soliton-dump | kappa0-table | evolve | stability-sweep
                    // | remark33-sweep | variational-check | corollary-constant
  std::string out_dir = "out";
  long seed = 1;
  int threads = 1;
  int grid_n = 1024;     // nodes (even)
  double grid_l = 40.0;  // box half-width, length units
  double dt = 1e-4;      // time step, time units
  double horizon = 5.0;  // evolution end time, time units
  double omega = 1.0;
  double c = 0.0;
  double b = 0.0;
  double dealias_fraction = 0.0; // 0 = auto: 1/3 for b > 0, 1/2 for b = 0
  int record_every = 0;          // 0 = auto (~60 samples per run)
  double tol = 1e-9;             // root-finder / residual tolerance
  std::vector<double> b_list;
  std::vector<double> alpha_list;
  std::vector<double> r_list;
  std::vector<double> omega_list;
  std::string interior_rows; // variational rows "w:c:b;w:c:b;..."

  static const std::set<std::string>& allowed_keys();
  static ExperimentConfig from_config(const ConfigMap& cfg);
  void validate() const;
  double effective_dealias(double b_run) const;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct RunOutcome {
  bool ok = true;                  // all checks passed, no row errors
  std::vector<std::string> files;  // written files, relative to out_dir
  std::vector<CheckResult> checks;
  std::string manifest_path;
};

RunOutcome run_experiment(const ExperimentConfig& cfg);

// Individual commands (kind-specific entry points used by run_experiment).
RunOutcome cmd_kappa0_table(const ExperimentConfig& cfg);
RunOutcome cmd_corollary_constant(const ExperimentConfig& cfg);
RunOutcome cmd_soliton_dump(const ExperimentConfig& cfg);
RunOutcome cmd_evolve(const ExperimentConfig& cfg);
RunOutcome cmd_stability_sweep(const ExperimentConfig& cfg);
RunOutcome cmd_remark33_sweep(const ExperimentConfig& cfg);
RunOutcome cmd_variational_check(const ExperimentConfig& cfg);

// Work pool for independent sweep rows; results land in index order.
void parallel_rows(int n, int threads, const std::function<void(int)>& fn);

} // namespace dnlslab
