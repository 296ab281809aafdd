#include "dnlslab/functionals.hpp"

namespace dnlslab {

namespace {

// Im int conj(u) u_x dx and Im int |u|^2 conj(u) u_x dx in one pass.
struct DerivativeIntegrals {
  double im_ubar_ux = 0.0;
  double im_u2_ubar_ux = 0.0;
};

DerivativeIntegrals derivative_integrals(const ComplexField& u,
                                         const ComplexField& ux) {
  DerivativeIntegrals out;
  const size_t n = u.values.size();
  for (size_t j = 0; j < n; ++j) {
    const cplx t = std::conj(u.values[j]) * ux.values[j];
    out.im_ubar_ux += t.imag();
    out.im_u2_ubar_ux += std::norm(u.values[j]) * t.imag();
  }
  const double dx = u.grid->spacing();
  out.im_ubar_ux *= dx;
  out.im_u2_ubar_ux *= dx;
  return out;
}

} // namespace

double mass(const ComplexField& u) { return norms(u).l2_sq; }

double momentum(const ComplexField& u) {
  ComplexField ux = spectral_derivative(u);
  return real_inner(cplx(0.0, 1.0) * ux, u);
}

double n1(const ComplexField& u) {
  ComplexField ux = spectral_derivative(u);
  return -derivative_integrals(u, ux).im_u2_ubar_ux;
}

double n2(const ComplexField& u, double b) { return b * norms(u).l6_pow6; }

double energy(const ComplexField& u, double b) {
  const FieldNorms nm = norms(u);
  return 0.5 * nm.hdot1_sq - 0.25 * n1(u) - b / 6.0 * nm.l6_pow6;
}

ConservedTriple conserved(const ComplexField& u, double b) {
  ConservedTriple out;
  const FieldNorms nm = norms(u);
  ComplexField ux = spectral_derivative(u);
  const DerivativeIntegrals di = derivative_integrals(u, ux);
  out.mass = nm.l2_sq;
  out.momentum = -di.im_ubar_ux; // (i u_x, u) = -Im int conj(u) u_x
  out.energy = 0.5 * nm.hdot1_sq + 0.25 * di.im_u2_ubar_ux -
               b / 6.0 * nm.l6_pow6;
  return out;
}

double nehari_K(const ComplexField& u, double w, double c, double b) {
  const FieldNorms nm = norms(u);
  ComplexField ux = spectral_derivative(u);
  const DerivativeIntegrals di = derivative_integrals(u, ux);
  return nm.hdot1_sq + w * nm.l2_sq - c * di.im_ubar_ux + di.im_u2_ubar_ux -
         b * nm.l6_pow6;
}

double nehari_K_expanded(const ComplexField& u, double w, double c, double b) {
  const FieldNorms nm = norms(u);
  const ConservedTriple emp = conserved(u, b);
  return -nm.hdot1_sq - b / 3.0 * nm.l6_pow6 + 4.0 * emp.energy +
         w * emp.mass + c * emp.momentum;
}

double action_S(const ComplexField& u, double w, double c, double b) {
  const ConservedTriple emp = conserved(u, b);
  return emp.energy + 0.5 * w * emp.mass + 0.5 * c * emp.momentum;
}

VariationalValues variational_values(const ComplexField& u, double w, double c,
                                     double b) {
  VariationalValues out;
  out.K = nehari_K(u, w, c, b);
  out.S = action_S(u, w, c, b);
  out.N1 = n1(u);
  out.N2 = n2(u, b);
  return out;
}

} // namespace dnlslab
