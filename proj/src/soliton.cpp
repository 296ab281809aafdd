#include "dnlslab/soliton.hpp"

#include <cmath>
#include <stdexcept>

#include "dnlslab/functionals.hpp"

namespace dnlslab {

double gamma_of_b(double b) {
  if (b < 0.0) throw std::invalid_argument("quintic coefficient b must be >= 0");
  return 1.0 + 16.0 * b / 3.0;
}

SolitonParams SolitonParams::make(double omega, double c, double b) {
  SolitonParams p;
  p.omega = omega;
  p.c = c;
  p.b = b;
  p.gamma = gamma_of_b(b);
  if (!(omega > 0.0)) throw std::invalid_argument("soliton frequency must be > 0");
  const double edge = 2.0 * std::sqrt(omega);
  // Admissible region -2 sqrt(w) < c <= 2 sqrt(w), endpoint inclusive.
  const double tol = 1e-12 * std::max(1.0, edge);
  if (c <= -edge + tol || c > edge + tol)
    throw std::invalid_argument("soliton speed outside -2 sqrt(w) < c <= 2 sqrt(w)");
  return p;
}

bool SolitonParams::endpoint() const {
  return std::abs(4.0 * omega - c * c) <= 1e-12 * 4.0 * omega;
}

double SolitonParams::decay_rate() const {
  if (endpoint()) return 0.0;
  return std::sqrt(4.0 * omega - c * c);
}

double profile_squared(const SolitonParams& p, double x) {
  if (p.endpoint())
    return 4.0 * p.c / (p.c * p.c * x * x + p.gamma);
  const double k = p.decay_rate();
  const double D = std::sqrt(p.c * p.c + p.gamma * k * k);
  const double den = D * std::cosh(k * x) - p.c;
  return 2.0 * k * k / den;
}

double profile_cumulative(const SolitonParams& p, double x) {
  const double sg = std::sqrt(p.gamma);
  if (p.endpoint())
    return 4.0 / sg * (M_PI / 2.0 + std::atan(p.c * x / sg));
  const double k = p.decay_rate();
  const double D = std::sqrt(p.c * p.c + p.gamma * k * k);
  const double A = std::sqrt((D + p.c) / (D - p.c));
  return 4.0 / sg * (std::atan(A * std::tanh(k * x / 2.0)) + std::atan(A));
}

double profile_phase(const SolitonParams& p, double x) {
  return 0.5 * p.c * x - 0.25 * profile_cumulative(p, x);
}

double profile_mass_closed_form(const SolitonParams& p) {
  const double sg = std::sqrt(p.gamma);
  if (p.endpoint()) return 4.0 * M_PI / sg;
  const double k = p.decay_rate();
  const double D = std::sqrt(p.c * p.c + p.gamma * k * k);
  const double A = std::sqrt((D + p.c) / (D - p.c));
  return 8.0 / sg * std::atan(A);
}

ComplexField build_soliton(const SolitonParams& p, GridPtr grid,
                           BuildReport* report) {
  ComplexField out(std::move(grid));
  const int n = out.size();
  for (int j = 0; j < n; ++j) {
    const double x = out.grid->node(j);
    const double rho = profile_squared(p, x);
    out.values[static_cast<size_t>(j)] =
        std::polar(std::sqrt(rho), profile_phase(p, x));
  }
  if (report) {
    const double L = out.grid->half_width();
    report->edge_to_peak = profile_squared(p, L) / profile_squared(p, 0.0);
    report->resolved = p.endpoint() || report->edge_to_peak < 1e-10;
  }
  return out;
}

ComplexField scale_field(const ComplexField& f, double lambda,
                         ResampleReport* report) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaling factor must be > 0");
  const int n = f.size();
  const double L = f.grid->half_width();
  if (report) {
    double edge = 0.0, total = 0.0;
    const int band = std::max(1, n / 40);
    for (int j = 0; j < n; ++j) {
      const double a2 = std::norm(f.values[static_cast<size_t>(j)]);
      total += a2;
      if (j < band || j >= n - band) edge += a2;
    }
    report->edge_mass_fraction = total > 0.0 ? edge / total : 0.0;
  }
  if (lambda == 1.0) return f;
  // Evaluation points lambda * x_j outside the box take the value 0 (the
  // field is a line object extended by zero), not the periodic wrap, which
  // would alias a spurious copy of the field into the support.
  const double step = lambda * f.grid->spacing();
  const double t0 = lambda * (-L);
  int j_lo = 0, j_hi = n - 1;
  if (lambda > 1.0) {
    j_lo = static_cast<int>(std::ceil((-L - t0) / step - 1e-12));
    j_hi = static_cast<int>(std::floor((L - t0) / step + 1e-12));
    j_lo = std::max(j_lo, 0);
    j_hi = std::min(j_hi, n - 1);
  }
  std::vector<cplx> vals(static_cast<size_t>(n), cplx(0.0, 0.0));
  const int count = j_hi - j_lo + 1;
  if (count > 0) {
    std::vector<cplx> inner =
        evaluate_interpolant_uniform(f, t0 + j_lo * step, step, count);
    const double amp = std::sqrt(lambda);
    for (int j = 0; j < count; ++j)
      vals[static_cast<size_t>(j_lo + j)] = amp * inner[static_cast<size_t>(j)];
  }
  return ComplexField(f.grid, std::move(vals));
}

ComplexField kaup_newell_gauge(const ComplexField& u) {
  ComplexField abs2(u.grid);
  for (size_t j = 0; j < u.values.size(); ++j)
    abs2.values[j] = std::norm(u.values[j]);
  const std::vector<double> cum = cumulative_integral_real(abs2);
  ComplexField out(u.grid);
  for (size_t j = 0; j < u.values.size(); ++j)
    out.values[j] = u.values[j] * std::polar(1.0, -0.5 * cum[j]);
  return out;
}

namespace {

// J_n(T) = int_T^inf dt / (1 + t^2)^n for n = 1, 2, 3.
double J1(double T) { return M_PI / 2.0 - std::atan(T); }
double J2(double T) {
  const double I2 = T / (2.0 * (1.0 + T * T)) + 0.5 * std::atan(T);
  return M_PI / 4.0 - I2;
}
double J3(double T) {
  const double t2 = 1.0 + T * T;
  const double I3 = T / (4.0 * t2 * t2) + 3.0 * T / (8.0 * t2) +
                    3.0 / 8.0 * std::atan(T);
  return 3.0 * M_PI / 16.0 - I3;
}

} // namespace

TailCorrections endpoint_tail_corrections(const SolitonParams& p,
                                          const SpectralGrid& grid) {
  if (!p.endpoint())
    throw std::invalid_argument(
        "tail corrections apply to the endpoint branch only");
  const double c = p.c, g = p.gamma;
  const double sg = std::sqrt(g);
  const double T = c * grid.half_width() / sg;
  TailCorrections out;
  // int_{|x|>L} Phi^{2n} = 2 * 4^n c^{n-1} g^{1/2-n} J_n(T); the |phi'|^2
  // tail combines the same pieces through Theta' = c/2 - Phi^2/4.
  out.mass = 8.0 / sg * J1(T);
  out.l4 = 32.0 * c / (g * sg) * J2(T);
  out.l6 = 128.0 * c * c / (g * g * sg) * J3(T);
  out.hdot1 = 2.0 * c * c / sg * J1(T) -
              8.0 * c * c / (g * sg) * (1.0 - 1.0 / g) * J3(T);
  return out;
}

EndpointFunctionals endpoint_corrected_functionals(const SolitonParams& p,
                                                   GridPtr grid) {
  if (!p.endpoint())
    throw std::invalid_argument(
        "corrected functionals apply to the endpoint branch only");
  // The sampled field is generally not smoothly periodic (its gauge phase
  // increment across the box is arbitrary), so spectral derivatives would
  // pick up boundary artifacts. All integrands are known analytically for
  // phi = Phi e^{i Theta} with Theta' = c/2 - Phi^2/4:
  //   |phi'|^2 = Phi'^2 + Phi^2 Theta'^2,
  //   P-integrand = -Phi^2 Theta',  N1-integrand = -Phi^4 Theta'.
  const double c = p.c, g = p.gamma;
  const int n = grid->num_points();
  double m_g = 0, l4_g = 0, l6_g = 0, h_g = 0, p_g = 0, n1_g = 0;
  for (int j = 0; j < n; ++j) {
    const double x = grid->node(j);
    const double den = c * c * x * x + g;
    const double rho = 4.0 * c / den;
    const double drho = -8.0 * c * c * c * x / (den * den);
    const double tp = 0.5 * c - 0.25 * rho;
    m_g += rho;
    l4_g += rho * rho;
    l6_g += rho * rho * rho;
    h_g += drho * drho / (4.0 * rho) + rho * tp * tp;
    p_g += -rho * tp;
    n1_g += -rho * rho * tp;
  }
  const double dx = grid->spacing();
  const TailCorrections t = endpoint_tail_corrections(p, *grid);
  EndpointFunctionals out{};
  out.mass = m_g * dx + t.mass;
  out.l4 = l4_g * dx + t.l4;
  out.l6 = l6_g * dx + t.l6;
  out.hdot1 = h_g * dx + t.hdot1;
  out.momentum = p_g * dx + (-0.5 * c * t.mass + 0.25 * t.l4);
  out.n1 = n1_g * dx + (-0.5 * c * t.l4 + 0.25 * t.l6);
  out.energy = 0.5 * out.hdot1 - 0.25 * out.n1 - p.b / 6.0 * out.l6;
  out.K = out.hdot1 + p.omega * out.mass + p.c * out.momentum - out.n1 -
          p.b * out.l6;
  out.S = out.energy + 0.5 * p.omega * out.mass + 0.5 * p.c * out.momentum;
  return out;
}

double endpoint_phase_matched_halfwidth(const SolitonParams& p,
                                        double min_half_width) {
  if (!p.endpoint())
    throw std::invalid_argument("phase matching applies to the endpoint branch");
  const double c = p.c, sg = std::sqrt(p.gamma);
  // Phase increment across the box: Theta(L) - Theta(-L)
  //   = cL - (2/sg) atan(cL/sg); find L >= min with increment = 2 pi m.
  auto increment = [&](double L) {
    return c * L - 2.0 / sg * std::atan(c * L / sg);
  };
  const int m = static_cast<int>(std::ceil(increment(min_half_width) /
                                           (2.0 * M_PI) - 1e-12));
  double L = std::max(min_half_width, 1.0);
  for (int it = 0; it < 60; ++it) {
    const double f = increment(L) - 2.0 * M_PI * m;
    const double df = c - 2.0 * c / (sg * sg + c * c * L * L);
    const double Lnext = L - f / df;
    if (std::abs(Lnext - L) < 1e-13 * std::max(1.0, L)) return Lnext;
    L = Lnext;
  }
  return L;
}

DegenerateInfo kappa0(double b, double tol, GridPtr grid) {
  if (b < 0.0) throw std::invalid_argument("quintic coefficient b must be >= 0");
  DegenerateInfo out;
  if (b == 0.0) {
    // Endpoint member, kappa0 = 1 exactly; mass from tail-corrected grid
    // quadrature.
    out.kappa0 = 1.0;
    const SolitonParams p = SolitonParams::make(1.0, 2.0, 0.0);
    const EndpointFunctionals f = endpoint_corrected_functionals(p, grid);
    out.threshold_mass = f.mass;
    out.energy_bound_coef = std::sqrt(2.0) - 1.0;
    out.e_residual = f.energy;
    out.p_residual = f.momentum;
    return out;
  }
  auto p_of_kappa = [&](double kappa) {
    const SolitonParams p = SolitonParams::make(1.0, 2.0 * kappa, b);
    return momentum(build_soliton(p, grid));
  };
  double lo = 1e-3, hi = 1.0 - 1e-6;
  double plo = p_of_kappa(lo);
  double phi = p_of_kappa(hi);
  if (!(plo > 0.0 && phi < 0.0))
    throw std::runtime_error(
        "kappa0 bisection bracket has no sign change; grid too small or b too "
        "close to 0");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double pm = p_of_kappa(mid);
    if (pm > 0.0) {
      lo = mid;
      plo = pm;
    } else {
      hi = mid;
      phi = pm;
    }
  }
  out.kappa0 = 0.5 * (lo + hi);
  const SolitonParams p = SolitonParams::make(1.0, 2.0 * out.kappa0, b);
  const ComplexField soliton = build_soliton(p, grid);
  out.threshold_mass = mass(soliton);
  out.p_residual = momentum(soliton);
  out.e_residual = energy(soliton, b);
  out.energy_bound_coef =
      out.kappa0 * std::sqrt(1.0 + out.kappa0 * out.kappa0) -
      out.kappa0 * out.kappa0;
  if (std::abs(out.p_residual) > tol || std::abs(out.e_residual) > tol)
    throw std::runtime_error(
        "kappa0 residuals exceed tolerance; grid too small or tol too tight");
  return out;
}

DegenerateInfo kappa0(double b, double tol) {
  static const GridPtr default_grid = make_grid(60.0, 4096);
  return kappa0(b, tol, default_grid);
}

} // namespace dnlslab
