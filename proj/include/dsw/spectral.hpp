#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace dsw {

using cplx = std::complex<double>;

/// Real periodic function sampled at x_j = j L / N, j = 0..N-1.
struct GridFunction {
  double L = 0.0;
  std::vector<double> samples;

  GridFunction() = default;
  GridFunction(double period, std::vector<double> values);

  std::size_t size() const noexcept { return samples.size(); }
  double x(std::size_t j) const noexcept {
    return L * static_cast<double>(j) / static_cast<double>(samples.size());
  }
  double dx() const noexcept { return L / static_cast<double>(samples.size()); }
};

bool is_power_of_two(std::size_t n) noexcept;

/// Throws ShapeError unless both functions live on the same grid.
void require_same_grid(const GridFunction& a, const GridFunction& b);

/// Real-to-complex FFT of length N (half spectrum, N/2+1 coefficients).
/// Plans are created once per instance; execute() is thread-safe for
/// distinct instances.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// Unnormalized forward transform: out[k] = sum_j in[j] e^{-2 pi i jk/N}.
  void forward(const double* in, cplx* out);
  /// Inverse including the 1/N factor.
  void inverse(const cplx* in, double* out);

  std::vector<cplx> forward(const std::vector<double>& in);
  std::vector<double> inverse(const std::vector<cplx>& in);

 private:
  struct Plans;
  std::size_t n_;
  Plans* plans_;
};

/// Angular wavenumbers 2 pi k / L for the half spectrum k = 0..N/2.
std::vector<double> half_wavenumbers(std::size_t n, double L);

/// Spectral derivative of order `order` (>= 1). The Nyquist coefficient is
/// dropped for odd orders so the result stays real.
GridFunction spectral_derivative(const GridFunction& f, int order);

/// Evaluate the trigonometric interpolant of f at an arbitrary point.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const GridFunction& f);
  double operator()(double x) const;
  double derivative(double x) const;

 private:
  double L_;
  std::size_t n_;
  std::vector<cplx> coeffs_;  // normalized half spectrum
};

/// Trapezoid rule over one period (spectrally accurate for smooth data).
double periodic_integral(const GridFunction& f);

}  // namespace dsw

namespace dsw {

/// Trigonometric interpolant of f sampled on the shifted grid x_j + shift.
std::vector<double> shifted_samples(const GridFunction& f, double shift);

}  // namespace dsw
