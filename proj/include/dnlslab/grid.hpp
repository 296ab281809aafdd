#pragma once
// Periodic spectral grid and sampled complex fields.
//
// The spatial domain is the box [-L, L) with N uniform nodes x_j = -L + j*dx,
// dx = 2L/N. Fourier modes are e^{i k (x+L)} with k an integer multiple of
// pi/L; coefficients are stored in FFT order with the single Nyquist mode at
// index N/2 assigned the positive wavenumber +N/2 * pi/L.
//
// Everything here is pure: grids and fields are immutable after construction
// and safe to share across threads.

#include <complex>
#include <memory>
#include <vector>

namespace dnlslab {

using cplx = std::complex<double>;

class SpectralGrid {
public:
  // N must be even and >= 16, L > 0.
  SpectralGrid(double half_width, int num_points);

  double half_width() const { return L_; }
  int num_points() const { return N_; }
  double spacing() const { return dx_; }
  double node(int j) const { return nodes_[static_cast<size_t>(j)]; }
  const std::vector<double>& nodes() const { return nodes_; }

  // Wavenumbers in FFT storage order: k_m = m*pi/L for m <= N/2,
  // (m - N)*pi/L for m > N/2.
  const std::vector<double>& wavenumbers() const { return k_; }
  double nyquist_wavenumber() const { return k_[static_cast<size_t>(N_ / 2)]; }

  bool operator==(const SpectralGrid& other) const {
    return N_ == other.N_ && L_ == other.L_;
  }

private:
  double L_;
  int N_;
  double dx_;
  std::vector<double> nodes_;
  std::vector<double> k_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

GridPtr make_grid(double half_width, int num_points);

// A complex function sampled at the grid nodes.
struct ComplexField {
  GridPtr grid;
  std::vector<cplx> values;

  ComplexField() = default;
  explicit ComplexField(GridPtr g)
      : grid(std::move(g)), values(static_cast<size_t>(grid->num_points())) {}
  ComplexField(GridPtr g, std::vector<cplx> v);

  int size() const { return grid ? grid->num_points() : 0; }
  cplx& operator[](size_t j) { return values[j]; }
  const cplx& operator[](size_t j) const { return values[j]; }
};

bool is_finite(const ComplexField& f);

// ---- transforms -------------------------------------------------------

// Fourier coefficients c_m (forward transform scaled by 1/N), FFT order.
std::vector<cplx> spectrum(const ComplexField& f);

// Inverse of spectrum(): rebuild samples from coefficients.
ComplexField field_from_spectrum(GridPtr grid, const std::vector<cplx>& coef);

// Raw unnormalized transforms on caller buffers (in and out must differ).
void fft_forward_raw(int n, const cplx* in, cplx* out);
void fft_inverse_raw(int n, const cplx* in, cplx* out);

// ---- calculus ---------------------------------------------------------

// d/dx by multiplication with ik in transform space; the Nyquist mode of the
// derivative is zeroed.
ComplexField spectral_derivative(const ComplexField& f);

// d^2/dx^2 by multiplication with -k^2 (Nyquist kept; -k^2 is symmetric).
ComplexField spectral_second_derivative(const ComplexField& f);

// Rectangle (= trapezoid, periodic) rule: dx * sum_j f(x_j).
cplx quadrature(const ComplexField& f);

// Spectrally accurate running integral F(x_j) = int_{-L}^{x_j} f dy:
// linear-in-x mean part plus division by ik of the fluctuating part.
std::vector<double> cumulative_integral_real(const ComplexField& f);

struct FieldNorms {
  double l2_sq;    // ||f||_{L^2}^2
  double l6_pow6;  // ||f||_{L^6}^6
  double hdot1_sq; // ||f'||_{L^2}^2
  double h1() const;
};
FieldNorms norms(const ComplexField& f);

double l4_pow4(const ComplexField& f); // ||f||_{L^4}^4

// Re int f conj(g) dx. Throws on grid mismatch.
double real_inner(const ComplexField& f, const ComplexField& g);

// ---- band-limited resampling -----------------------------------------

struct ResampleReport {
  double truncated_mass_fraction = 0.0; // |c|^2 fraction dropped by coarsening
  double edge_mass_fraction = 0.0;      // |f|^2 fraction in the outer 5% of the box
};

// Evaluate the trigonometric interpolant of f at count uniformly spaced
// points x0, x0 + step, ... The interpolant is 2L-periodic, so points
// outside the box wrap around.
std::vector<cplx> evaluate_interpolant_uniform(const ComplexField& f, double x0,
                                               double step, int count);

// Band-limited interpolation onto the target grid. Same half-width uses
// exact spectral zero-pad/truncation; otherwise the interpolant is evaluated
// at the target nodes.
ComplexField resample(const ComplexField& f, GridPtr target,
                      ResampleReport* report = nullptr);

// f shifted right by y (f(x - y)), via phase multiplication in transform
// space; y need not be a multiple of dx.
ComplexField shift_field(const ComplexField& f, double y);

// Zero all modes with |k| > fraction * k_max. fraction >= 1 is a no-op.
void apply_mode_filter(std::vector<cplx>& coef, const SpectralGrid& grid,
                       double fraction);

// |c|^2 fraction carried by modes with |k| > fraction * k_max.
double spectral_tail_fraction(const ComplexField& f, double fraction);

// ---- small field arithmetic -------------------------------------------

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& f);

} // namespace dnlslab
