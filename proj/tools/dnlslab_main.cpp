// Command-line front end: one subcommand per experiment kind. Options given
// on the command line override values from --config.

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dnlslab/experiments.hpp"

namespace {

// "N,L" -> grid size and half-width.
void parse_resolution(const std::string& text, dnlslab::ExperimentConfig& cfg) {
  std::stringstream ss(text);
  std::string n_str, l_str;
  if (!std::getline(ss, n_str, ',') || !std::getline(ss, l_str))
    throw CLI::ValidationError("--resolution expects N,L");
  cfg.grid_n = std::stoi(n_str);
  cfg.grid_l = std::stod(l_str);
}

void report(const dnlslab::RunOutcome& out) {
  for (const dnlslab::CheckResult& c : out.checks)
    std::printf("[%s] %s (value=%.6g threshold=%.6g)\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value, c.threshold);
  std::printf("outputs:\n");
  for (const std::string& f : out.files) std::printf("  %s\n", f.c_str());
  std::printf("manifest: %s\n", out.manifest_path.c_str());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dnlslab: numerical experiments for the quintic derivative "
               "Schrodinger flow and its solitary waves"};
  app.require_subcommand(1);

  dnlslab::ExperimentConfig cli; // values bound to CLI options
  std::string config_path, resolution, b_list, alpha_list, r_list, omega_list;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (key = value)");
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--seed", cli.seed, "run seed, recorded in outputs");
    sub->add_option("--threads", cli.threads, "work-pool size for sweep rows");
    sub->add_option("--resolution", resolution, "grid as N,L");
    sub->add_option("--dt", cli.dt, "time step");
    sub->add_option("--horizon", cli.horizon, "evolution end time");
    sub->add_option("--omega", cli.omega, "soliton frequency");
    sub->add_option("--c", cli.c, "soliton speed");
    sub->add_option("--b", cli.b, "quintic coefficient");
    sub->add_option("--dealias", cli.dealias_fraction,
                    "kept-mode fraction; 0 = auto (1/3 quintic, 1/2 cubic)");
    sub->add_option("--record-every", cli.record_every,
                    "steps between trajectory samples (0 = auto)");
    sub->add_option("--tol", cli.tol, "root-finder tolerance");
  };

  CLI::App* dump = app.add_subcommand(
      "soliton-dump", "sample a solitary wave and tabulate its functionals");
  add_common(dump);
  CLI::App* k0 = app.add_subcommand(
      "kappa0-table",
      "degenerate speed ratio, threshold mass and residuals per b");
  add_common(k0);
  k0->add_option("--b-list", b_list, "comma-separated b values");
  CLI::App* cc = app.add_subcommand(
      "corollary-constant", "energy-bound coefficient k sqrt(1+k^2) - k^2 per b");
  add_common(cc);
  cc->add_option("--b-list", b_list, "comma-separated b values");
  CLI::App* ev = app.add_subcommand(
      "evolve", "integrate a soliton and track conserved-quantity drift");
  add_common(ev);
  CLI::App* sweep = app.add_subcommand(
      "stability-sweep",
      "amplitude-perturbed degenerate soliton: sup orbit distance per alpha");
  add_common(sweep);
  sweep->add_option("--alpha-list", alpha_list, "comma-separated amplitudes");
  CLI::App* rk = app.add_subcommand(
      "remark33-sweep",
      "phase-twisted degenerate data e^{irx} phi: energy-momentum ratio c(r)");
  add_common(rk);
  rk->add_option("--r-list", r_list, "comma-separated twist frequencies");
  CLI::App* vc = app.add_subcommand(
      "variational-check",
      "constrained action minimization against the soliton orbit");
  add_common(vc);
  vc->add_option("--omega-list", omega_list, "degenerate-row frequencies");
  vc->add_option("--interior-rows", cli.interior_rows, "rows as w:c:b;w:c:b");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    dnlslab::ExperimentConfig cfg;
    if (!config_path.empty()) {
      const dnlslab::ConfigMap file = dnlslab::ConfigMap::parse_file(
          config_path, dnlslab::ExperimentConfig::allowed_keys());
      cfg = dnlslab::ExperimentConfig::from_config(file);
    }
    auto given = [&](const std::string& name) {
      return sub->count(name) > 0;
    };
    if (given("--out")) cfg.out_dir = cli.out_dir;
    if (given("--seed")) cfg.seed = cli.seed;
    if (given("--threads")) cfg.threads = cli.threads;
    if (given("--dt")) cfg.dt = cli.dt;
    if (given("--horizon")) cfg.horizon = cli.horizon;
    if (given("--omega")) cfg.omega = cli.omega;
    if (given("--c")) cfg.c = cli.c;
    if (given("--b")) cfg.b = cli.b;
    if (given("--dealias")) cfg.dealias_fraction = cli.dealias_fraction;
    if (given("--record-every")) cfg.record_every = cli.record_every;
    if (given("--tol")) cfg.tol = cli.tol;
    if (sub->get_option_no_throw("--interior-rows") && given("--interior-rows"))
      cfg.interior_rows = cli.interior_rows;
    if (!resolution.empty()) parse_resolution(resolution, cfg);
    if (!b_list.empty()) cfg.b_list = dnlslab::parse_double_list(b_list);
    if (!alpha_list.empty())
      cfg.alpha_list = dnlslab::parse_double_list(alpha_list);
    if (!r_list.empty()) cfg.r_list = dnlslab::parse_double_list(r_list);
    if (!omega_list.empty())
      cfg.omega_list = dnlslab::parse_double_list(omega_list);
    cfg.kind = sub->get_name();

    const dnlslab::RunOutcome out = dnlslab::run_experiment(cfg);
    report(out);
    return out.ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
