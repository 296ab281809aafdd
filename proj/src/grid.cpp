#include "dnlslab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace dnlslab {

namespace {

// FFTW's planner is not thread-safe; executing a cached plan on fresh
// buffers is. Plans are created once per (N, direction) on scratch storage
// with FFTW_UNALIGNED so they can run on arbitrary caller buffers.
class PlanCache {
public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const long long key = 2LL * n + (sign == FFTW_FORWARD ? 0 : 1);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<cplx> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans_.emplace(key, p);
    return p;
  }

private:
  std::mutex mu_;
  std::unordered_map<long long, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

void exec(int n, int sign, const cplx* in, cplx* out) {
  fftw_plan p = plan_cache().get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

} // namespace

SpectralGrid::SpectralGrid(double half_width, int num_points)
    : L_(half_width), N_(num_points) {
  if (!(L_ > 0.0)) throw std::invalid_argument("grid half-width must be > 0");
  if (N_ < 16 || N_ % 2 != 0)
    throw std::invalid_argument("grid size must be even and >= 16");
  dx_ = 2.0 * L_ / N_;
  nodes_.resize(static_cast<size_t>(N_));
  k_.resize(static_cast<size_t>(N_));
  const double k0 = M_PI / L_;
  for (int j = 0; j < N_; ++j) {
    nodes_[static_cast<size_t>(j)] = -L_ + dx_ * j;
    const int m = (j <= N_ / 2) ? j : j - N_;
    k_[static_cast<size_t>(j)] = k0 * m;
  }
}

GridPtr make_grid(double half_width, int num_points) {
  return std::make_shared<const SpectralGrid>(half_width, num_points);
}

ComplexField::ComplexField(GridPtr g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid->num_points())
    throw std::invalid_argument("field size does not match grid");
}

bool is_finite(const ComplexField& f) {
  for (const cplx& v : f.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void fft_forward_raw(int n, const cplx* in, cplx* out) {
  exec(n, FFTW_FORWARD, in, out);
}

void fft_inverse_raw(int n, const cplx* in, cplx* out) {
  exec(n, FFTW_BACKWARD, in, out);
}

std::vector<cplx> spectrum(const ComplexField& f) {
  const int n = f.size();
  std::vector<cplx> out(static_cast<size_t>(n));
  exec(n, FFTW_FORWARD, f.values.data(), out.data());
  const double s = 1.0 / n;
  for (cplx& c : out) c *= s;
  return out;
}

ComplexField field_from_spectrum(GridPtr grid, const std::vector<cplx>& coef) {
  if (static_cast<int>(coef.size()) != grid->num_points())
    throw std::invalid_argument("spectrum size does not match grid");
  ComplexField out(std::move(grid));
  exec(out.size(), FFTW_BACKWARD, coef.data(), out.values.data());
  return out;
}

ComplexField spectral_derivative(const ComplexField& f) {
  std::vector<cplx> c = spectrum(f);
  const auto& k = f.grid->wavenumbers();
  const int n = f.size();
  for (int m = 0; m < n; ++m)
    c[static_cast<size_t>(m)] *= cplx(0.0, k[static_cast<size_t>(m)]);
  c[static_cast<size_t>(n / 2)] = 0.0; // unpaired Nyquist mode
  return field_from_spectrum(f.grid, c);
}

ComplexField spectral_second_derivative(const ComplexField& f) {
  std::vector<cplx> c = spectrum(f);
  const auto& k = f.grid->wavenumbers();
  const int n = f.size();
  for (int m = 0; m < n; ++m) {
    const double km = k[static_cast<size_t>(m)];
    c[static_cast<size_t>(m)] *= -km * km;
  }
  return field_from_spectrum(f.grid, c);
}

cplx quadrature(const ComplexField& f) {
  cplx acc = 0.0;
  for (const cplx& v : f.values) acc += v;
  return acc * f.grid->spacing();
}

std::vector<double> cumulative_integral_real(const ComplexField& f) {
  const int n = f.size();
  const double L = f.grid->half_width();
  std::vector<cplx> c = spectrum(f);
  const cplx mean = c[0];
  c[0] = 0.0;
  const auto& k = f.grid->wavenumbers();
  for (int m = 1; m < n; ++m)
    c[static_cast<size_t>(m)] /= cplx(0.0, k[static_cast<size_t>(m)]);
  ComplexField g = field_from_spectrum(f.grid, c);
  const cplx g0 = g.values[0]; // value at x = -L
  std::vector<double> out(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double xL = f.grid->node(j) + L;
    out[static_cast<size_t>(j)] =
        (mean * xL + g.values[static_cast<size_t>(j)] - g0).real();
  }
  return out;
}

double FieldNorms::h1() const { return std::sqrt(l2_sq + hdot1_sq); }

FieldNorms norms(const ComplexField& f) {
  FieldNorms out{0.0, 0.0, 0.0};
  for (const cplx& v : f.values) {
    const double a2 = std::norm(v);
    out.l2_sq += a2;
    out.l6_pow6 += a2 * a2 * a2;
  }
  const double dx = f.grid->spacing();
  out.l2_sq *= dx;
  out.l6_pow6 *= dx;
  ComplexField df = spectral_derivative(f);
  double h = 0.0;
  for (const cplx& v : df.values) h += std::norm(v);
  out.hdot1_sq = h * dx;
  return out;
}

double l4_pow4(const ComplexField& f) {
  double acc = 0.0;
  for (const cplx& v : f.values) {
    const double a2 = std::norm(v);
    acc += a2 * a2;
  }
  return acc * f.grid->spacing();
}

double real_inner(const ComplexField& f, const ComplexField& g) {
  if (!(*f.grid == *g.grid))
    throw std::invalid_argument("real_inner: grid mismatch");
  double acc = 0.0;
  const size_t n = f.values.size();
  for (size_t j = 0; j < n; ++j)
    acc += (f.values[j] * std::conj(g.values[j])).real();
  return acc * f.grid->spacing();
}

std::vector<cplx> evaluate_interpolant_uniform(const ComplexField& f, double x0,
                                               double step, int count) {
  const int n = f.size();
  const double L = f.grid->half_width();
  const auto& k = f.grid->wavenumbers();
  std::vector<cplx> c = spectrum(f);
  std::vector<cplx> out(static_cast<size_t>(count), cplx(0.0, 0.0));
  for (int m = 0; m < n; ++m) {
    const double km = k[static_cast<size_t>(m)];
    cplx w = c[static_cast<size_t>(m)] *
             std::polar(1.0, km * (x0 + L)); // coefficient at first point
    const cplx q = std::polar(1.0, km * step);
    for (int j = 0; j < count; ++j) {
      out[static_cast<size_t>(j)] += w;
      w *= q;
    }
  }
  return out;
}

ComplexField resample(const ComplexField& f, GridPtr target,
                      ResampleReport* report) {
  const int n = f.size();
  const int nt = target->num_points();
  if (report) {
    // Outer 5% of the box on each measure; wrap/truncation contamination proxy.
    double edge = 0.0, total = 0.0;
    const int band = std::max(1, n / 40);
    for (int j = 0; j < n; ++j) {
      const double a2 = std::norm(f.values[static_cast<size_t>(j)]);
      total += a2;
      if (j < band || j >= n - band) edge += a2;
    }
    report->edge_mass_fraction = total > 0.0 ? edge / total : 0.0;
  }
  if (target->half_width() == f.grid->half_width()) {
    if (nt == n) return ComplexField(target, f.values);
    std::vector<cplx> c = spectrum(f);
    std::vector<cplx> ct(static_cast<size_t>(nt), cplx(0.0, 0.0));
    const int keep = std::min(n, nt);
    double dropped = 0.0, total = 0.0;
    for (int m = 0; m < n; ++m) total += std::norm(c[static_cast<size_t>(m)]);
    for (int m = 0; m <= keep / 2; ++m) ct[static_cast<size_t>(m)] = c[static_cast<size_t>(m)];
    for (int m = 1; m < keep / 2; ++m)
      ct[static_cast<size_t>(nt - m)] = c[static_cast<size_t>(n - m)];
    if (nt < n) {
      for (int m = nt / 2 + 1; m <= n - nt / 2; ++m)
        dropped += std::norm(c[static_cast<size_t>(m)]);
    }
    if (report)
      report->truncated_mass_fraction = total > 0.0 ? dropped / total : 0.0;
    return field_from_spectrum(target, ct);
  }
  // Different box: evaluate the interpolant at the target nodes.
  std::vector<cplx> vals = evaluate_interpolant_uniform(
      f, target->node(0), target->spacing(), nt);
  return ComplexField(target, std::move(vals));
}

ComplexField shift_field(const ComplexField& f, double y) {
  std::vector<cplx> c = spectrum(f);
  const auto& k = f.grid->wavenumbers();
  const int n = f.size();
  for (int m = 0; m < n; ++m)
    c[static_cast<size_t>(m)] *= std::polar(1.0, -k[static_cast<size_t>(m)] * y);
  return field_from_spectrum(f.grid, c);
}

void apply_mode_filter(std::vector<cplx>& coef, const SpectralGrid& grid,
                       double fraction) {
  if (fraction >= 1.0) return;
  const auto& k = grid.wavenumbers();
  const double cut = fraction * grid.nyquist_wavenumber();
  for (size_t m = 0; m < coef.size(); ++m)
    if (std::abs(k[m]) > cut) coef[m] = 0.0;
}

double spectral_tail_fraction(const ComplexField& f, double fraction) {
  std::vector<cplx> c = spectrum(f);
  const auto& k = f.grid->wavenumbers();
  const double cut = fraction * f.grid->nyquist_wavenumber();
  double tail = 0.0, total = 0.0;
  for (size_t m = 0; m < c.size(); ++m) {
    const double p = std::norm(c[m]);
    total += p;
    if (std::abs(k[m]) > cut) tail += p;
  }
  return total > 0.0 ? tail / total : 0.0;
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  if (!(*a.grid == *b.grid)) throw std::invalid_argument("field grid mismatch");
  ComplexField out(a.grid);
  for (size_t j = 0; j < a.values.size(); ++j)
    out.values[j] = a.values[j] + b.values[j];
  return out;
}

ComplexField operator-(const ComplexField& a, const ComplexField& b) {
  if (!(*a.grid == *b.grid)) throw std::invalid_argument("field grid mismatch");
  ComplexField out(a.grid);
  for (size_t j = 0; j < a.values.size(); ++j)
    out.values[j] = a.values[j] - b.values[j];
  return out;
}

ComplexField operator*(cplx s, const ComplexField& f) {
  ComplexField out(f.grid);
  for (size_t j = 0; j < f.values.size(); ++j) out.values[j] = s * f.values[j];
  return out;
}

} // namespace dnlslab
