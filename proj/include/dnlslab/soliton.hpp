#pragma once
// The two-parameter solitary-wave family of
//   i u_t + u_xx + i|u|^2 u_x + b|u|^4 u = 0,
// u(t,x) = e^{iwt} phi_{w,c}(x - ct), phi = Phi e^{i Theta} with
//
//   Phi^2(x) = 2(4w - c^2) / (sqrt(c^2 + g(4w - c^2)) cosh(sqrt(4w - c^2) x) - c)
//                                          for w > c^2/4  (exponential branch)
//   Phi^2(x) = 4c / (c^2 x^2 + g)          for w = c^2/4, c > 0  (endpoint branch)
//
//   Theta(x) = (c/2) x - (1/4) int_{-inf}^x Phi^2,   g = 1 + 16b/3.
//
// Both the profile and the cumulative phase integral have closed forms
// (arctan antiderivatives), so fields are sampled analytically and runs are
// reproducible bit for bit. The endpoint branch decays like 1/x^2 in Phi^2;
// its box-truncation tails also have closed forms (endpoint_tail_corrections).

#include "dnlslab/grid.hpp"

namespace dnlslab {

double gamma_of_b(double b); // 1 + 16 b / 3

struct SolitonParams {
  double omega = 1.0;
  double c = 0.0;
  double b = 0.0;
  double gamma = 1.0;

  // Validates b >= 0 and -2 sqrt(w) < c <= 2 sqrt(w).
  static SolitonParams make(double omega, double c, double b);

  // True when w = c^2/4 within 1e-12 relative (the algebraic-decay member).
  bool endpoint() const;
  // sqrt(4w - c^2); 0 on the endpoint branch.
  double decay_rate() const;
};

double profile_squared(const SolitonParams& p, double x);
// int_{-inf}^x Phi^2 dy, closed form on both branches.
double profile_cumulative(const SolitonParams& p, double x);
double profile_phase(const SolitonParams& p, double x); // Theta(x)
// int_R Phi^2 dx over the whole line.
double profile_mass_closed_form(const SolitonParams& p);

struct BuildReport {
  double edge_to_peak = 0.0; // Phi^2(L) / Phi^2(0)
  bool resolved = true;      // edge_to_peak < 1e-10 (exponential branch)
};

// Samples phi_{w,c} on the grid. For the exponential branch the grid should
// satisfy Phi^2(L) < 1e-10 Phi^2(0); violations are flagged in the report.
ComplexField build_soliton(const SolitonParams& p, GridPtr grid,
                           BuildReport* report = nullptr);

// Mass-critical scaling f_lambda(x) = sqrt(lambda) f(lambda x) on the same
// grid, by band-limited evaluation of the interpolant.
ComplexField scale_field(const ComplexField& f, double lambda,
                         ResampleReport* report = nullptr);

// Kaup-Newell gauge: psi = u exp(-(i/2) int_{-L}^x |u|^2 dy).
ComplexField kaup_newell_gauge(const ComplexField& u);

// Box-truncation integrals of the endpoint profile beyond +-L:
// tails of int Phi^2, int Phi^4, int Phi^6 and int |phi'|^2 (both sides).
struct TailCorrections {
  double mass = 0.0;
  double l4 = 0.0;
  double l6 = 0.0;
  double hdot1 = 0.0;
};
TailCorrections endpoint_tail_corrections(const SolitonParams& p,
                                          const SpectralGrid& grid);

// Functionals of an endpoint soliton from grid quadrature of the analytic
// integrands plus the tails: exact-line values up to quadrature error.
struct EndpointFunctionals {
  double energy, mass, momentum;
  double n1, l4, l6, hdot1;
  double K, S; // at (w, c) of the soliton itself
};
EndpointFunctionals endpoint_corrected_functionals(const SolitonParams& p,
                                                   GridPtr grid);

// Smallest half-width >= min_half_width for which the endpoint soliton's
// gauge phase increment across the box is a multiple of 2 pi, so that the
// sampled field is smoothly periodic.
double endpoint_phase_matched_halfwidth(const SolitonParams& p,
                                        double min_half_width);

// The degenerate member: speed ratio kappa0(b) in (0,1] with
// E(phi_{1,2 kappa0}) = P(phi_{1,2 kappa0}) = 0.
struct DegenerateInfo {
  double kappa0 = 1.0;
  double threshold_mass = 0.0;      // M* = M(phi_{1,2 kappa0})
  double energy_bound_coef = 0.0;   // kappa0 sqrt(1+kappa0^2) - kappa0^2
  double e_residual = 0.0;
  double p_residual = 0.0;
};

// b = 0 returns kappa0 = 1 exactly (endpoint member, tail-corrected mass);
// b > 0 bisects P(phi_{1,2 kappa}) over kappa in (1e-3, 1) to |P| < tol.
DegenerateInfo kappa0(double b, double tol, GridPtr grid);
DegenerateInfo kappa0(double b, double tol = 1e-9);

} // namespace dnlslab
