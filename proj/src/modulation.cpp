#include "dnlslab/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dnlslab/soliton.hpp"

namespace dnlslab {

namespace {

struct H1Correlator {
  // w_m = 2L (1 + k_m^2) that_m conj(vhat_m); C(y) = sum_m w_m e^{i k_m y}
  std::vector<cplx> w;
  std::vector<double> k;

  cplx at(double y) const {
    cplx acc = 0.0;
    for (size_t m = 0; m < w.size(); ++m)
      acc += w[m] * std::polar(1.0, k[m] * y);
    return acc;
  }

  // C, C', C'' in one sweep for Newton refinement of |C|^2.
  void derivatives(double y, cplx& c0, cplx& c1, cplx& c2) const {
    c0 = c1 = c2 = 0.0;
    for (size_t m = 0; m < w.size(); ++m) {
      const cplx e = w[m] * std::polar(1.0, k[m] * y);
      c0 += e;
      c1 += cplx(0.0, k[m]) * e;
      c2 += -k[m] * k[m] * e;
    }
  }

  // One Newton step on d/dy |C|^2 = 2 Re(conj(C) C').
  double newton_step(double y) const {
    cplx c0, c1, c2;
    derivatives(y, c0, c1, c2);
    const double g1 = 2.0 * (std::conj(c0) * c1).real();
    const double g2 = 2.0 * (std::norm(c1) + (std::conj(c0) * c2).real());
    if (g2 >= 0.0 || !std::isfinite(g1 / g2)) return y; // not near a max
    return y - g1 / g2;
  }
};

H1Correlator make_correlator(const ComplexField& v, const ComplexField& target) {
  const int n = v.size();
  const double twoL = 2.0 * v.grid->half_width();
  const auto& k = v.grid->wavenumbers();
  std::vector<cplx> vh = spectrum(v);
  std::vector<cplx> th = spectrum(target);
  H1Correlator corr;
  corr.w.resize(static_cast<size_t>(n));
  corr.k.assign(k.begin(), k.end());
  for (int m = 0; m < n; ++m) {
    const size_t s = static_cast<size_t>(m);
    corr.w[s] = twoL * (1.0 + k[s] * k[s]) * th[s] * std::conj(vh[s]);
  }
  return corr;
}

double h1_norm_sq(const ComplexField& f) {
  const FieldNorms nm = norms(f);
  return nm.l2_sq + nm.hdot1_sq;
}

} // namespace

double lambda0(const ComplexField& u, double omega, double b,
               double threshold_mass) {
  const FieldNorms nm = norms(u);
  const double denom = nm.hdot1_sq + b / 3.0 * nm.l6_pow6;
  if (!(denom > 0.0))
    throw std::invalid_argument("lambda0 undefined for a zero field");
  return std::sqrt(omega * threshold_mass / denom);
}

ModulationFit align_orbit(const ComplexField& v, const ComplexField& target) {
  if (!(*v.grid == *target.grid))
    throw std::invalid_argument("align_orbit: grid mismatch");
  const int n = v.size();
  const double L = v.grid->half_width();
  const double dx = v.grid->spacing();

  const H1Correlator corr = make_correlator(v, target);

  // |C| at every node shift y_j = -L + j dx via one inverse transform:
  // C(y_j) = sum_m (w_m e^{-i k_m L}) e^{2 pi i j m / N}.
  std::vector<cplx> wt(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    const size_t s = static_cast<size_t>(m);
    wt[s] = corr.w[s] * std::polar(1.0, -corr.k[s] * L);
  }
  std::vector<cplx> c_nodes(static_cast<size_t>(n));
  fft_inverse_raw(n, wt.data(), c_nodes.data());

  int best = 0;
  double best_abs = -1.0, second_abs = -1.0;
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(c_nodes[static_cast<size_t>(j)]);
    if (a > best_abs) {
      second_abs = best_abs;
      best_abs = a;
      best = j;
    } else if (a > second_abs) {
      second_abs = a;
    }
  }

  // Coarse golden-section bracket on [y* - dx, y* + dx], then Newton on
  // d/dy |C|^2 (a golden search on a smooth maximum stalls near sqrt(eps)).
  const double y_node = -L + dx * best;
  double a = y_node - dx, bnd = y_node + dx;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = bnd - gr * (bnd - a), x2 = a + gr * (bnd - a);
  double f1 = std::abs(corr.at(x1)), f2 = std::abs(corr.at(x2));
  for (int it = 0; it < 30 && bnd - a > 1e-5 * dx; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (bnd - a);
      f2 = std::abs(corr.at(x2));
    } else {
      bnd = x2;
      x2 = x1;
      f2 = f1;
      x1 = bnd - gr * (bnd - a);
      f1 = std::abs(corr.at(x1));
    }
  }
  double y = 0.5 * (a + bnd);
  for (int it = 0; it < 8; ++it) {
    const double y_next = corr.newton_step(y);
    if (!(std::abs(y_next - y_node) <= dx)) break; // keep inside the bracket
    if (y_next == y) break;
    y = y_next;
  }
  // Off-grid refinement must not lose to the node optimum.
  if (std::abs(corr.at(y)) < best_abs) y = y_node;

  ModulationFit fit;
  const cplx cy = corr.at(y);
  double theta = std::arg(cy);
  if (theta < 0.0) theta += 2.0 * M_PI;
  fit.theta = theta;
  fit.shift = y;
  fit.tie = best_abs > 0.0 && (best_abs - second_abs) <= 1e-12 * best_abs;

  ComplexField moved = shift_field(v, y);
  fit.residual = target - (std::polar(1.0, fit.theta) * moved);
  fit.distance = std::sqrt(std::max(0.0, h1_norm_sq(fit.residual)));
  return fit;
}

ModulationFit orbit_distance(const ComplexField& u, const ComplexField& target,
                             double omega, double b) {
  const double mstar = mass(target);
  const double lam0 = lambda0(u, omega, b, mstar);
  ComplexField v = scale_field(u, lam0);
  ModulationFit fit = align_orbit(v, target);
  fit.lambda0 = lam0;
  // Twisted residual seminorms at the endpoint speed c = 2 sqrt(omega);
  // informative for b = 0 targets, harmless otherwise.
  const double c_end = 2.0 * std::sqrt(omega);
  ComplexField twisted(fit.residual.grid);
  for (int j = 0; j < twisted.size(); ++j) {
    const double x = twisted.grid->node(j);
    twisted.values[static_cast<size_t>(j)] =
        fit.residual.values[static_cast<size_t>(j)] *
        std::polar(1.0, -0.5 * c_end * x);
  }
  fit.twisted_hdot1 = std::sqrt(norms(twisted).hdot1_sq);
  fit.twisted_l4 = std::pow(l4_pow4(twisted), 0.25);
  return fit;
}

std::vector<ModulationFit> proximity_series(const Trajectory& traj,
                                             double omega, double b) {
  if (traj.samples.empty()) return {};
  const GridPtr grid = traj.samples.front().u.grid;
  const DegenerateInfo deg = kappa0(b, 1e-7, grid);
  const SolitonParams p =
      SolitonParams::make(omega, 2.0 * deg.kappa0 * std::sqrt(omega), b);
  const ComplexField target = build_soliton(p, grid);
  std::vector<ModulationFit> out;
  out.reserve(traj.samples.size());
  for (const TrajectorySample& s : traj.samples)
    out.push_back(orbit_distance(s.u, target, omega, b));
  return out;
}

} // namespace dnlslab
