#pragma once
// Pseudo-spectral time integration of
//   i u_t + u_xx + i|u|^2 u_x + b|u|^4 u = 0,
// i.e. u_t = i u_xx - |u|^2 u_x + i b |u|^4 u.
//
// The linear part is advanced exactly by the transform-space propagator
// e^{-i k^2 dt}; the nonlinear remainder is handled by a classical 4-stage
// explicit combination (integrating-factor RK4). A derivative nonlinearity
// is not a pointwise phase multiplication, so the usual NLS split-step trick
// does not apply cleanly; the integrating factor treats it uniformly.
//
// Nonlinear products are formed in physical space after zeroing the top
// (1 - dealias_fraction) of modes. The default keeps the lowest 1/3 of
// modes, the safe cut for the quintic product |u|^4 u; b = 0 runs may relax
// it to 1/2 (cubic rule) or 2/3.
//
// Stability heuristic for the explicit nonlinear stage:
//   dt <~ 2.8 / (k_max * max|u|^2).

#include "dnlslab/functionals.hpp"
#include "dnlslab/grid.hpp"

namespace dnlslab {

struct EvolveConfig {
  double dt = 1e-4;
  double t_end = 1.0;
  double b = 0.0;
  double dealias_fraction = 1.0 / 3.0;
  int record_every = 100;           // steps between trajectory samples
  double blowup_threshold = 0.0;    // H^1-dot norm cap; 0 = 1e3 x initial
};

enum class RunStatus { completed, blowup_detected, resolution_warning };

const char* run_status_name(RunStatus s);

struct TrajectorySample {
  double t = 0.0;
  ComplexField u;
  ConservedTriple cons;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  RunStatus status = RunStatus::completed;
  double t_final = 0.0;
  double max_tail_fraction = 0.0; // spectral mass beyond 2/3 k_max, run max
};

// du/dt at fixed time.
ComplexField rhs(const ComplexField& u, double b, double dealias_fraction = 1.0);

// One integrating-factor RK4 step.
ComplexField step(const ComplexField& u, double dt, double b,
                  double dealias_fraction = 1.0 / 3.0);

// Integrate to t_end (or blow-up), sampling every record_every steps.
Trajectory run(const ComplexField& u0, const EvolveConfig& config);

} // namespace dnlslab
