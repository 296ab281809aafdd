#pragma once
// Conserved quantities and variational functionals of the flow
//   i u_t + u_xx + i|u|^2 u_x + b|u|^4 u = 0:
//
//   E(u) = 1/2 ||u_x||^2 - 1/4 (i|u|^2 u_x, u) - b/6 ||u||_L6^6
//   M(u) = ||u||_L2^2
//   P(u) = (i u_x, u)
//
// with (f,g) = Re int f conj(g) dx, plus the action S_{w,c}, the Nehari
// functional K_{w,c} (two algebraically equivalent routes), and the
// auxiliary integrals N1, N2. All functionals take b explicitly.

#include "dnlslab/grid.hpp"

namespace dnlslab {

struct ConservedTriple {
  double energy = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
};

struct VariationalValues {
  double K = 0.0;
  double S = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;
};

double mass(const ComplexField& u);
double momentum(const ComplexField& u);
double energy(const ComplexField& u, double b);
ConservedTriple conserved(const ComplexField& u, double b);

// N1 = -Im int |u|^2 conj(u) u_x dx,  N2 = b ||u||_L6^6.
double n1(const ComplexField& u);
double n2(const ComplexField& u, double b);

// K_{w,c} assembled literally from its defining integrals:
//   ||u_x||^2 + w||u||^2 - c Im int conj(u) u_x + Im int |u|^2 conj(u) u_x
//   - b ||u||_L6^6
double nehari_K(const ComplexField& u, double w, double c, double b);

// The same functional through the expansion
//   -||u_x||^2 - b/3 ||u||_L6^6 + 4E + wM + cP.
double nehari_K_expanded(const ComplexField& u, double w, double c, double b);

// S_{w,c} = E + w/2 M + c/2 P.
double action_S(const ComplexField& u, double w, double c, double b);

VariationalValues variational_values(const ComplexField& u, double w, double c,
                                     double b);

} // namespace dnlslab
