#include "dsw/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <utility>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

GridFunction::GridFunction(double period, std::vector<double> values)
    : L(period), samples(std::move(values)) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("GridFunction: period must be positive");
  if (samples.size() < 16 || !is_power_of_two(samples.size()))
    throw ShapeError("GridFunction: N must be a power of two >= 16");
  for (double s : samples)
    if (!std::isfinite(s)) throw DomainError("GridFunction: non-finite sample");
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size() || std::abs(a.L - b.L) > 1e-14 * std::max(a.L, b.L))
    throw ShapeError("grid functions live on different grids");
}

struct RealFft::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<double> rbuf;
  std::vector<cplx> cbuf;
};

RealFft::RealFft(std::size_t n) : n_(n), plans_(new Plans) {
  if (n < 2) throw ShapeError("RealFft: length must be >= 2");
  plans_->rbuf.resize(n);
  plans_->cbuf.resize(n / 2 + 1);
  auto* c = reinterpret_cast<fftw_complex*>(plans_->cbuf.data());
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  plans_->fwd = fftw_plan_dft_r2c_1d(len, plans_->rbuf.data(), c, FFTW_ESTIMATE);
  plans_->bwd = fftw_plan_dft_c2r_1d(len, c, plans_->rbuf.data(), FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  if (!plans_) return;
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plans_->fwd);
    fftw_destroy_plan(plans_->bwd);
  }
  delete plans_;
}

RealFft::RealFft(RealFft&& o) noexcept : n_(o.n_), plans_(std::exchange(o.plans_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& o) noexcept {
  std::swap(n_, o.n_);
  std::swap(plans_, o.plans_);
  return *this;
}

void RealFft::forward(const double* in, cplx* out) {
  std::copy(in, in + n_, plans_->rbuf.begin());
  fftw_execute(plans_->fwd);
  std::copy(plans_->cbuf.begin(), plans_->cbuf.end(), out);
}

void RealFft::inverse(const cplx* in, double* out) {
  std::copy(in, in + n_ / 2 + 1, plans_->cbuf.begin());
  // c2r destroys its input, so it always works on the scratch buffer.
  fftw_execute(plans_->bwd);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = plans_->rbuf[j] * scale;
}

std::vector<cplx> RealFft::forward(const std::vector<double>& in) {
  if (in.size() != n_) throw ShapeError("RealFft::forward: length mismatch");
  std::vector<cplx> out(n_ / 2 + 1);
  forward(in.data(), out.data());
  return out;
}

std::vector<double> RealFft::inverse(const std::vector<cplx>& in) {
  if (in.size() != n_ / 2 + 1) throw ShapeError("RealFft::inverse: length mismatch");
  std::vector<double> out(n_);
  inverse(in.data(), out.data());
  return out;
}

std::vector<double> half_wavenumbers(std::size_t n, double L) {
  std::vector<double> k(n / 2 + 1);
  const double k0 = 2.0 * std::numbers::pi / L;
  for (std::size_t j = 0; j < k.size(); ++j) k[j] = k0 * static_cast<double>(j);
  return k;
}

GridFunction spectral_derivative(const GridFunction& f, int order) {
  if (order < 1) throw DomainError("spectral_derivative: order must be >= 1");
  const std::size_t n = f.size();
  RealFft fft(n);
  auto hat = fft.forward(f.samples);
  const auto k = half_wavenumbers(n, f.L);
  for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= std::pow(cplx(0.0, k[j]), order);
  if (order % 2 == 1) hat.back() = 0.0;
  GridFunction out;
  out.L = f.L;
  out.samples = fft.inverse(hat);
  return out;
}

TrigInterpolant::TrigInterpolant(const GridFunction& f) : L_(f.L), n_(f.size()) {
  RealFft fft(n_);
  coeffs_ = fft.forward(f.samples);
  for (auto& c : coeffs_) c /= static_cast<double>(n_);
}

double TrigInterpolant::operator()(double x) const {
  const double w = 2.0 * std::numbers::pi / L_;
  double s = coeffs_[0].real();
  const std::size_t half = n_ / 2;
  for (std::size_t k = 1; k < half; ++k)
    s += 2.0 * (coeffs_[k] * std::polar(1.0, w * static_cast<double>(k) * x)).real();
  // Nyquist mode split symmetrically: cos(N pi x / L).
  s += coeffs_[half].real() * std::cos(w * static_cast<double>(half) * x);
  return s;
}

double TrigInterpolant::derivative(double x) const {
  const double w = 2.0 * std::numbers::pi / L_;
  double s = 0.0;
  const std::size_t half = n_ / 2;
  for (std::size_t k = 1; k < half; ++k) {
    const double kk = w * static_cast<double>(k);
    s += 2.0 * (cplx(0.0, kk) * coeffs_[k] * std::polar(1.0, kk * x)).real();
  }
  return s;
}

double periodic_integral(const GridFunction& f) {
  return f.dx() * std::accumulate(f.samples.begin(), f.samples.end(), 0.0);
}

}  // namespace dsw

namespace dsw {

std::vector<double> shifted_samples(const GridFunction& f, double shift) {
  const std::size_t n = f.size();
  RealFft fft(n);
  auto hat = fft.forward(f.samples);
  const auto k = half_wavenumbers(n, f.L);
  for (std::size_t j = 0; j + 1 < hat.size(); ++j) hat[j] *= std::polar(1.0, k[j] * shift);
  // Nyquist: keep the real cosine part so the output stays real.
  hat.back() *= std::cos(k.back() * shift);
  return fft.inverse(hat);
}

}  // namespace dsw
