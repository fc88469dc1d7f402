#include "dsw/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

constexpr int kMaxAgmSteps = 40;

}  // namespace

Modulus::Modulus(double kappa) : kappa_(kappa), kprime_(0.0) {
  if (!std::isfinite(kappa) || kappa < 0.0 || kappa > kMaxModulus) {
    std::ostringstream msg;
    msg << "modulus must satisfy 0 <= kappa < 1 (and kappa <= 1 - 1e-9), got "
        << kappa;
    throw DomainError(msg.str());
  }
  // (1 - k)(1 + k) keeps the complementary modulus accurate near k = 1.
  kprime_ = std::sqrt((1.0 - kappa) * (1.0 + kappa));
}

double complete_elliptic_K(Modulus kappa) {
  double a = 1.0;
  double b = kappa.complementary();
  for (int i = 0; i < kMaxAgmSteps && std::abs(a - b) > 1e-16 * a; ++i) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

double complete_elliptic_E(Modulus kappa) {
  double a = 1.0;
  double b = kappa.complementary();
  double c = kappa.value();
  double sum = 0.5 * c * c;
  double pow2 = 0.5;
  for (int i = 0; i < kMaxAgmSteps && std::abs(c) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0;
    sum += pow2 * c * c;
  }
  const double K = std::numbers::pi / (2.0 * a);
  return K * (1.0 - sum);
}

JacobiSnCnDn jacobi_sn_cn_dn(double u, Modulus kappa) {
  return jacobi_sn_cn_dn(u, kappa, complete_elliptic_K(kappa));
}

JacobiSnCnDn jacobi_sn_cn_dn(double u, Modulus kappa, double quarter_period) {
  if (!std::isfinite(u)) throw DomainError("jacobi_sn_cn_dn: non-finite argument");
  const double k = kappa.value();
  if (k == 0.0) return {std::sin(u), std::cos(u), 1.0};

  // Reduce to [-2K, 2K]; sn and cn have period 4K.
  const double period = 4.0 * quarter_period;
  u -= period * std::round(u / period);

  // Abramowitz & Stegun 16.4: descending AGM, then the amplitude recursion
  // phi_{n-1} = (phi_n + asin(c_n/a_n sin phi_n)) / 2.
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  double b = kappa.complementary();
  c[0] = k;
  int n = 0;
  while (std::abs(c[n]) > 1e-16 * a[n] && n < kMaxAgmSteps) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int i = n; i > 0; --i) phi = 0.5 * (phi + std::asin(c[i] / a[i] * std::sin(phi)));
  const double sn = std::sin(phi);
  const double cn = std::cos(phi);
  // dn^2 = cn^2 + k'^2 sn^2 is a sum of nonnegative terms; the textbook ratio
  // cos(phi_0)/cos(phi_1 - phi_0) is 0/0 at u = K.
  const double kp = kappa.complementary();
  const double dn = std::sqrt(cn * cn + kp * kp * sn * sn);
  return {sn, cn, dn};
}

}  // namespace dsw
