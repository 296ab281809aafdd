#include "dnlslab/evolve.hpp"

#include <cmath>
#include <stdexcept>

namespace dnlslab {

namespace {

// Spectral-space stepper state: works on unnormalized coefficients
// (values-scale spectra), with scratch buffers reused across steps.
class Stepper {
public:
  Stepper(GridPtr grid, double dt, double b, double dealias_fraction)
      : grid_(std::move(grid)), n_(grid_->num_points()), dt_(dt), b_(b) {
    const auto& k = grid_->wavenumbers();
    const double cut = dealias_fraction * grid_->nyquist_wavenumber();
    e_full_.resize(static_cast<size_t>(n_));
    e_half_.resize(static_cast<size_t>(n_));
    mask_.resize(static_cast<size_t>(n_));
    ik_.resize(static_cast<size_t>(n_));
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      e_full_[s] = std::polar(1.0, -k[s] * k[s] * dt);
      e_half_[s] = std::polar(1.0, -k[s] * k[s] * dt * 0.5);
      mask_[s] = (dealias_fraction >= 1.0 || std::abs(k[s]) <= cut) ? 1.0 : 0.0;
      ik_[s] = (m == n_ / 2) ? cplx(0.0, 0.0) : cplx(0.0, k[s]);
    }
    u_.resize(static_cast<size_t>(n_));
    du_.resize(static_cast<size_t>(n_));
    nl_.resize(static_cast<size_t>(n_));
    tmp_.resize(static_cast<size_t>(n_));
    k1_.resize(static_cast<size_t>(n_));
    k2_.resize(static_cast<size_t>(n_));
    k3_.resize(static_cast<size_t>(n_));
    k4_.resize(static_cast<size_t>(n_));
    stage_.resize(static_cast<size_t>(n_));
  }

  // N(u) in spectral space: filter input, form -|u|^2 u_x + i b |u|^4 u in
  // physical space, transform back, filter output.
  void nonlinear(const std::vector<cplx>& what, std::vector<cplx>& out) {
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      tmp_[s] = what[s] * mask_[s];
    }
    fft_inverse_raw(n_, tmp_.data(), u_.data());
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      tmp_[s] *= ik_[s];
    }
    fft_inverse_raw(n_, tmp_.data(), du_.data());
    // The unnormalized inverse of normalized coefficients is the field
    // itself, so u_ and du_ hold physical samples here.
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      const cplx uv = u_[s];
      const double a2 = std::norm(uv);
      nl_[s] = -a2 * du_[s] + cplx(0.0, b_) * a2 * a2 * uv;
    }
    fft_forward_raw(n_, nl_.data(), out.data());
    const double inv_n = 1.0 / n_;
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      out[s] *= inv_n * mask_[s];
    }
  }

  // One integrating-factor RK4 step, in place on the spectrum.
  void advance(std::vector<cplx>& uh) {
    nonlinear(uh, k1_);
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      stage_[s] = e_half_[s] * (uh[s] + 0.5 * dt_ * k1_[s]);
    }
    nonlinear(stage_, k2_);
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      stage_[s] = e_half_[s] * uh[s] + 0.5 * dt_ * k2_[s];
    }
    nonlinear(stage_, k3_);
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      stage_[s] = e_full_[s] * uh[s] + dt_ * e_half_[s] * k3_[s];
    }
    nonlinear(stage_, k4_);
    const double w = dt_ / 6.0;
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      uh[s] = e_full_[s] * uh[s] +
              w * (e_full_[s] * k1_[s] + 2.0 * e_half_[s] * (k2_[s] + k3_[s]) +
                   k4_[s]);
    }
  }

  // ||u'||_{L^2}^2 from the spectrum (cheap blow-up monitor).
  double hdot1_sq(const std::vector<cplx>& uh) const {
    const auto& k = grid_->wavenumbers();
    double acc = 0.0;
    for (int m = 0; m < n_; ++m) {
      const size_t s = static_cast<size_t>(m);
      acc += k[s] * k[s] * std::norm(uh[s]);
    }
    return acc * 2.0 * grid_->half_width();
  }

  bool finite(const std::vector<cplx>& uh) const {
    for (const cplx& v : uh)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

private:
  GridPtr grid_;
  int n_;
  double dt_, b_;
  std::vector<cplx> e_full_, e_half_;
  std::vector<double> mask_;
  std::vector<cplx> ik_;
  std::vector<cplx> u_, du_, nl_, tmp_, k1_, k2_, k3_, k4_, stage_;
};

} // namespace

const char* run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::resolution_warning: return "resolution_warning";
  }
  return "unknown";
}

ComplexField rhs(const ComplexField& u, double b, double dealias_fraction) {
  std::vector<cplx> c = spectrum(u);
  std::vector<cplx> cf = c;
  apply_mode_filter(cf, *u.grid, dealias_fraction);
  ComplexField uf = field_from_spectrum(u.grid, cf);
  const auto& k = u.grid->wavenumbers();
  const int n = u.size();
  std::vector<cplx> cdx = cf;
  for (int m = 0; m < n; ++m) {
    const size_t s = static_cast<size_t>(m);
    cdx[s] *= (m == n / 2) ? cplx(0.0, 0.0) : cplx(0.0, k[s]);
  }
  ComplexField dudx = field_from_spectrum(u.grid, cdx);
  ComplexField nl(u.grid);
  for (int m = 0; m < n; ++m) {
    const size_t s = static_cast<size_t>(m);
    const double a2 = std::norm(uf.values[s]);
    nl.values[s] = -a2 * dudx.values[s] +
                   cplx(0.0, b) * a2 * a2 * uf.values[s];
  }
  std::vector<cplx> cnl = spectrum(nl);
  apply_mode_filter(cnl, *u.grid, dealias_fraction);
  // linear part i u_xx = -i k^2 u in transform space, unfiltered
  for (int m = 0; m < n; ++m) {
    const size_t s = static_cast<size_t>(m);
    cnl[s] += cplx(0.0, -k[s] * k[s]) * c[s];
  }
  return field_from_spectrum(u.grid, cnl);
}

ComplexField step(const ComplexField& u, double dt, double b,
                  double dealias_fraction) {
  Stepper st(u.grid, dt, b, dealias_fraction);
  std::vector<cplx> uh(static_cast<size_t>(u.size()));
  fft_forward_raw(u.size(), u.values.data(), uh.data());
  const double inv_n = 1.0 / u.size();
  for (cplx& v : uh) v *= inv_n;
  st.advance(uh);
  if (!st.finite(uh))
    throw std::runtime_error("step produced non-finite field (blow-up?)");
  return field_from_spectrum(u.grid, uh);
}

Trajectory run(const ComplexField& u0, const EvolveConfig& config) {
  if (!(config.dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (config.t_end < 0.0) throw std::invalid_argument("t_end must be >= 0");
  if (!is_finite(u0)) throw std::invalid_argument("initial data not finite");

  Trajectory traj;
  const double h0 = std::sqrt(norms(u0).hdot1_sq);
  const double cap =
      config.blowup_threshold > 0.0 ? config.blowup_threshold : 1e3 * std::max(h0, 1.0);
  if (!(cap > h0))
    throw std::invalid_argument("blowup_threshold must exceed the initial Hdot1 norm");

  Stepper st(u0.grid, config.dt, config.b, config.dealias_fraction);
  std::vector<cplx> uh(static_cast<size_t>(u0.size()));
  fft_forward_raw(u0.size(), u0.values.data(), uh.data());
  const double inv_n = 1.0 / u0.size();
  for (cplx& v : uh) v *= inv_n;

  const long nsteps = std::lround(config.t_end / config.dt);
  const int cadence = std::max(1, config.record_every);
  bool tail_warned = false;

  auto record = [&](double t) {
    TrajectorySample s;
    s.t = t;
    // unnormalized inverse of the normalized spectrum
    ComplexField u(u0.grid);
    fft_inverse_raw(u0.size(), uh.data(), u.values.data());
    s.cons = conserved(u, config.b);
    const double tail = spectral_tail_fraction(u, 2.0 / 3.0);
    traj.max_tail_fraction = std::max(traj.max_tail_fraction, tail);
    if (tail > 1e-6) tail_warned = true;
    s.u = std::move(u);
    traj.samples.push_back(std::move(s));
  };

  record(0.0);
  for (long i = 0; i < nsteps; ++i) {
    st.advance(uh);
    const double t = (i + 1) * config.dt;
    if (!st.finite(uh) || st.hdot1_sq(uh) > cap * cap) {
      traj.status = RunStatus::blowup_detected;
      traj.t_final = t;
      if (st.finite(uh)) record(t);
      return traj;
    }
    if ((i + 1) % cadence == 0 || i + 1 == nsteps) record(t);
  }
  traj.t_final = nsteps * config.dt;
  traj.status = tail_warned ? RunStatus::resolution_warning : RunStatus::completed;
  return traj;
}

} // namespace dnlslab
