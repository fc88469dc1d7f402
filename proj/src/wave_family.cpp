#include "dsw/wave_family.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

void require_period(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("period L must be positive and finite");
}

double h_of(double k) { return 4.0 * std::sqrt(1.0 - k * k + k * k * k * k); }

double speed_of(double L, double k, double K) { return 4.0 * K * K * h_of(k) / (L * L); }

}  // namespace

double speed_threshold(double L) {
  require_period(L);
  return 4.0 * std::numbers::pi * std::numbers::pi / (L * L);
}

WaveParams params_from_kappa(double L, Modulus kappa) {
  require_period(L);
  const double k = kappa.value();
  if (!(k > 0.0)) throw DomainError("params_from_kappa: kappa must lie in (0, 1)");
  const double k2 = k * k;
  const double K = complete_elliptic_K(kappa);
  const double h = h_of(k);
  const double c = 4.0 * K * K * h / (L * L);
  const double hp = h + 2.0 * (2.0 * k2 - 1.0);
  const double hm = h - 2.0 * (2.0 * k2 - 1.0);
  const double eta4 = 8.0 * std::numbers::sqrt2 * K * K / (std::numbers::sqrt3 * L * L) *
                      std::sqrt(h * hp);
  const double beta_sq =
      2.0 * k2 * std::sqrt(hp) / (std::sqrt(hp) + std::numbers::sqrt3 * std::sqrt(hm));
  const double F1 = -eta4 * (4.0 * c * c - eta4 * eta4) / (8.0 * c);
  const double s = std::sqrt(16.0 * c * c - 3.0 * eta4 * eta4);
  const double eta1 = -0.5 * (s + eta4);
  const double eta3 = 0.5 * (s - eta4);
  const double a = 2.0 / std::sqrt(eta4 * (eta3 - eta1));
  return WaveParams{L, kappa, c, h, eta1, eta3, eta4, beta_sq, F1, a, 2.0 * K / L, K};
}

double dspeed_dkappa(double L, Modulus kappa) {
  const double k = kappa.value();
  const double kp2 = (1.0 - k) * (1.0 + k);
  const double K = complete_elliptic_K(kappa);
  const double E = complete_elliptic_E(kappa);
  const double dK = (E - kp2 * K) / (k * kp2);
  const double h = h_of(k);
  const double dh = 8.0 * (4.0 * k * k * k - 2.0 * k) / h;
  return 4.0 * (2.0 * K * dK * h + K * K * dh) / (L * L);
}

Modulus kappa_from_c(double L, double c) {
  const double c0 = speed_threshold(L);
  if (!std::isfinite(c) || c <= c0) {
    std::ostringstream msg;
    msg << "speed c = " << c << " is at or below the threshold 4 pi^2/L^2 = " << c0
        << "; no L-periodic wave exists";
    throw BelowThresholdError(msg.str());
  }
  double lo = 1e-6, hi = 1.0 - 1e-6;
  auto speed = [L](double k) { return speed_of(L, k, complete_elliptic_K(Modulus(k))); };
  if (c < speed(lo)) lo = 0.0;
  if (c > speed(hi)) throw DomainError("kappa_from_c: speed beyond the supported modulus range");
  // Bisection to a safe bracket, then Newton for the last digits.
  for (int i = 0; i < 60 && hi - lo > 1e-8; ++i) {
    const double mid = 0.5 * (lo + hi);
    (speed(mid) < c ? lo : hi) = mid;
  }
  double k = 0.5 * (lo + hi);
  for (int i = 0; i < 20; ++i) {
    if (k <= 0.0) break;
    const double f = speed(k) - c;
    const double step = f / dspeed_dkappa(L, Modulus(k));
    const double next = std::clamp(k - step, lo, hi);
    if (std::abs(next - k) < 1e-16) {
      k = next;
      break;
    }
    k = next;
  }
  return Modulus(k);
}

double invariant_violation(const WaveParams& p) {
  double v = 0.0;
  const double scale = p.eta4;
  v = std::max(v, std::abs(p.eta1 + p.eta3 + p.eta4) / scale);
  const double bound = 2.0 * p.c / std::numbers::sqrt3;
  if (!(p.eta1 < 0.0 && 0.0 < p.eta3 && p.eta3 < bound && bound < p.eta4 && p.eta4 < 2.0 * p.c))
    v = std::max(v, 1.0);
  const double period = 8.0 * std::sqrt(p.c) * p.K /
                        std::pow(16.0 * p.c * p.c * p.eta4 * p.eta4 - 3.0 * std::pow(p.eta4, 4), 0.25);
  v = std::max(v, std::abs(period - p.L) / p.L);
  v = std::max(v, std::abs(p.beta_sq + p.kappa_sq() * p.eta4 / p.eta1) / p.beta_sq);
  const double F1 = -(p.eta4 / (8.0 * p.c)) * (4.0 * p.c * p.c - p.eta4 * p.eta4);
  v = std::max(v, std::abs(F1 - p.F1) / std::abs(p.F1));
  // Four real roots of U.
  if (!(27.0 * p.F1 * p.F1 - 4.0 * std::pow(p.c, 4) < 0.0)) v = std::max(v, 1.0);
  return v;
}

ProfileValue eval_profile(const WaveParams& p, double xi) {
  const auto j = jacobi_sn_cn_dn(p.alpha * xi, p.kappa, p.K);
  const double psi = p.eta4 * j.dn * j.dn / (1.0 + p.beta_sq * j.sn * j.sn);
  return {psi, psi * psi / (2.0 * p.c)};
}

ProfileJet eval_profile_jet(const WaveParams& p, double xi) {
  const auto j = jacobi_sn_cn_dn(p.alpha * xi, p.kappa, p.K);
  const double w = 1.0 + p.beta_sq * j.sn * j.sn;
  const double psi = p.eta4 * j.dn * j.dn / w;
  const double S = j.sn * j.cn * j.dn / (w * w);
  const double dpsi = -2.0 * p.alpha * p.eta4 * p.kb() * S;
  // The profile equation gives psi'' without a second elliptic derivative.
  const double d2psi = p.F1 + p.c * psi - psi * psi * psi / (2.0 * p.c);
  return {psi, dpsi, d2psi};
}

GridFunction sample_psi(const WaveParams& p, std::size_t N) {
  std::vector<double> s(N);
  for (std::size_t j = 0; j < N; ++j) s[j] = eval_profile(p, p.L * j / static_cast<double>(N)).psi;
  return GridFunction(p.L, std::move(s));
}

GridFunction sample_phi(const WaveParams& p, std::size_t N) {
  std::vector<double> s(N);
  for (std::size_t j = 0; j < N; ++j) s[j] = eval_profile(p, p.L * j / static_cast<double>(N)).phi;
  return GridFunction(p.L, std::move(s));
}

double psi_half(const WaveParams& p) {
  return p.eta4 * (1.0 - p.kappa_sq()) / (1.0 + p.beta_sq);
}

double psi_second_half(const WaveParams& p) {
  const double b = 1.0 + p.beta_sq;
  return 8.0 * p.eta4 * p.K * p.K * p.kb() * (1.0 - p.kappa_sq()) / (p.L * p.L * b * b);
}

ProfileResidual profile_residual(const WaveParams& p, std::size_t N, double eta4_scale) {
  if (N < 64 || !is_power_of_two(N)) throw ShapeError("profile_residual: N must be a power of two >= 64");
  GridFunction psi = sample_psi(p, N);
  for (auto& s : psi.samples) s *= eta4_scale;
  const GridFunction d1 = spectral_derivative(psi, 1);
  const GridFunction d2 = spectral_derivative(psi, 2);
  ProfileResidual r{0.0, 0.0};
  for (std::size_t j = 0; j < N; ++j) {
    const double y = psi.samples[j];
    const double e1 = d2.samples[j] + y * y * y / (2.0 * p.c) - p.c * y - p.F1;
    const double U = y / (8.0 * p.c) * (y * y * y - 4.0 * p.c * p.c * y - 8.0 * p.c * p.F1);
    const double e2 = 0.5 * d1.samples[j] * d1.samples[j] + U - WaveParams::E_const;
    r.r1 = std::max(r.r1, std::abs(e1));
    r.r2 = std::max(r.r2, std::abs(e2));
  }
  return r;
}

ConservedQuantities conserved_quantities(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v);
  const GridFunction ux = spectral_derivative(u, 1);
  ConservedQuantities q{0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double a = u.samples[j], b = v.samples[j], d = ux.samples[j];
    q.m_u += a;
    q.m_v += b;
    q.e_mixed += d * d - a * a * b;
    q.l2 += a * a + b * b;
  }
  const double h = u.dx();
  q.m_u *= h;
  q.m_v *= h;
  q.e_mixed *= h;
  q.l2 *= h;
  return q;
}

}  // namespace dsw
