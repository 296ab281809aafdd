#pragma once
// Constrained minimization of the action S_{w,c} = E + w/2 M + c/2 P on the
// Nehari set {K_{w,c} = 0}, and the rigidity probe for fields with E <= 0,
// P <= 0 at the threshold mass.
//
// K(lambda psi) = lambda^2 A + lambda^4 B + lambda^6 C with
//   A = ||psi'||^2 + w||psi||^2 - c Im int conj(psi) psi',
//   B = Im int |psi|^2 conj(psi) psi',
//   C = -b ||psi||_L6^6,
// so projecting a ray onto the constraint set is a quadratic solve in
// m = lambda^2. The descent alternates an L^2-gradient step on S with that
// projection; the L^2 gradient of S is the stationary-equation operator
//   grad S(u) = -u'' + w u + i c u' - i|u|^2 u' - b|u|^4 u.

#include "dnlslab/grid.hpp"
#include "dnlslab/modulation.hpp"

namespace dnlslab {

ComplexField action_gradient(const ComplexField& u, double w, double c,
                             double b);

// max_j |grad S(u)(x_j)|: residual of the stationary equation.
double stationary_residual_max(const ComplexField& u, double w, double c,
                               double b);

struct NehariProjection {
  double lambda_star = 1.0;
  ComplexField field;
};

// Scales psi along its ray onto {K = 0}. Throws when no positive root
// exists ("not Nehari-reachable along the ray").
NehariProjection nehari_rescale(const ComplexField& psi, double w, double c,
                                double b);

struct MinimizationResult {
  ComplexField minimizer;
  double mu = 0.0;          // S at the minimizer
  int iterations = 0;
  bool converged = false;
  double orbit_dist = 0.0;  // (theta, y)-aligned H^1 distance to phi_{w,c}
  std::vector<double> mu_history;
};

MinimizationResult minimize_action(double w, double c, double b,
                                   const ComplexField& init, int max_steps,
                                   double lr, double tol = 1e-10);

struct RigidityRow {
  int index = 0;
  bool accepted = false;   // passed the E <= 0, P <= 0, M = M* screen
  std::string reason;      // populated for rejected samples
  double energy = 0.0;
  double momentum = 0.0;
  double mass = 0.0;
  double distance = 0.0;   // orbit distance to the degenerate family
  bool pass = false;       // accepted and distance below tolerance
};

// Screens each sample against the rigidity hypotheses and reports its orbit
// distance to the degenerate family (frequency matched through lambda0).
std::vector<RigidityRow> rigidity_probe(const std::vector<ComplexField>& samples,
                                        double b, double constraint_tol,
                                        double distance_tol);

} // namespace dnlslab
