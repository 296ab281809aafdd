#pragma once
// Distance to the soliton orbit modulo the symmetries of the flow: phase
// rotation, spatial translation, and (against the degenerate family) the
// mass-critical rescaling u -> u_{lambda0}.
//
// lambda0(u)^2 = w M* / (||u_x||^2 + b/3 ||u||_L6^6) matches the rescaled
// field's gradient strength to the degenerate soliton at frequency w; the
// reciprocal lambda = 1/lambda0 is the scale at which the soliton tracks u.
//
// The (theta, y) fit minimizes ||target - e^{i theta} v(. - y)||_{H^1}. For
// fixed y the optimal phase is closed form, theta = arg <target, v(.-y)>_H1,
// so only the shift needs searching: a full cross-correlation scan over node
// shifts (one transform pair) followed by golden-section refinement off-grid.

#include "dnlslab/evolve.hpp"
#include "dnlslab/grid.hpp"

namespace dnlslab {

struct ModulationFit {
  double theta = 0.0;      // optimal phase in [0, 2 pi)
  double shift = 0.0;      // optimal translation y
  double lambda0 = 1.0;    // rescaling applied to u before the fit
  double distance = 0.0;   // H^1 norm of the residual
  ComplexField residual;   // target - e^{i theta} v(. - y)
  bool tie = false;        // scan had near-degenerate minimizers
  // Gauge-twisted residual seminorms e^{-i c x / 2}(residual), reported for
  // endpoint-family targets where H^1 control degenerates.
  double twisted_hdot1 = 0.0;
  double twisted_l4 = 0.0;

  double lambda() const { return 1.0 / lambda0; }
};

// The rescaling factor of the proximity statement. Throws on a zero field.
double lambda0(const ComplexField& u, double omega, double b,
               double threshold_mass);

// Best (theta, y) alignment of v against target (no rescaling).
ModulationFit align_orbit(const ComplexField& v, const ComplexField& target);

// Full proximity quantity: rescale u by lambda0, then align against the
// degenerate soliton sampled in `target` (threshold mass taken from it).
ModulationFit orbit_distance(const ComplexField& u, const ComplexField& target,
                             double omega, double b);

// orbit_distance at every recorded trajectory sample, against the degenerate
// soliton at frequency omega for the given b.
std::vector<ModulationFit> proximity_series(const Trajectory& traj,
                                             double omega, double b);

} // namespace dnlslab
