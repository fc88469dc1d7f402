#include "dsw/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

using cplx = std::complex<double>;

TrigPolynomial TrigPolynomial::mode(int k, cplx a) {
  TrigPolynomial p;
  p.coeffs[k] = a;
  return p;
}

bool TrigPolynomial::has_mean() const {
  const auto it = coeffs.find(0);
  return it != coeffs.end() && it->second != cplx(0.0);
}

cplx TrigPolynomial::at(int k) const {
  const auto it = coeffs.find(k);
  return it == coeffs.end() ? cplx(0.0) : it->second;
}

bool TrigPolynomial::is_real(double tol) const {
  for (const auto& [k, c] : coeffs)
    if (std::abs(c - std::conj(at(-k))) > tol * std::max(1.0, std::abs(c))) return false;
  return true;
}

double TrigPolynomial::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs) m = std::max(m, std::abs(c));
  return m;
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& o) {
  for (const auto& [k, c] : o.coeffs) coeffs[k] += c;
  return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& o) {
  for (const auto& [k, c] : o.coeffs) coeffs[k] -= c;
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(cplx s) {
  for (auto& [k, c] : coeffs) c *= s;
  return *this;
}

TrigPolynomial TrigPolynomial::dx(int n) const {
  TrigPolynomial out = *this;
  for (auto& [k, c] : out.coeffs) c *= std::pow(cplx(0.0, k), n);
  return out;
}

TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a -= b; }
TrigPolynomial operator*(cplx s, TrigPolynomial a) { return a *= s; }

TrigPolynomial product(const TrigPolynomial& a, const TrigPolynomial& b) {
  TrigPolynomial out;
  for (const auto& [k1, c1] : a.coeffs)
    for (const auto& [k2, c2] : b.coeffs) out.coeffs[k1 + k2] += c1 * c2;
  return out;
}

TrigPolynomial remove_mean(TrigPolynomial g) {
  g.coeffs.erase(0);
  return g;
}

double normal_form_symbol(int k1, int k) {
  const double a = k1, b = k;
  const double q = a * a + b * b + a * b;
  if (q == 0.0) throw DomainError("normal_form_symbol: resonant frequency k1 = k = 0");
  return -1.0 / q;
}

TrigPolynomial normal_form_T(const TrigPolynomial& f, const TrigPolynomial& g) {
  if (g.has_mean()) {
    std::ostringstream msg;
    msg << "normal_form_T: g has nonzero mean " << g.at(0);
    throw MeanZeroViolation(msg.str());
  }
  TrigPolynomial out;
  for (const auto& [k1, a] : f.coeffs)
    for (const auto& [k2, b] : g.coeffs) {
      if (k2 == 0) continue;
      const int k = k1 + k2;
      out.coeffs[k] += normal_form_symbol(k1, k) * a * b;
    }
  return out;
}

TrigPolynomial ExpPath::at(double t) const {
  TrigPolynomial p;
  for (const auto& e : terms) p.coeffs[e.k] += e.amplitude * std::polar(1.0, e.omega * t);
  return p;
}

TrigPolynomial ExpPath::dt(double t) const {
  TrigPolynomial p;
  for (const auto& e : terms) p.coeffs[e.k] += cplx(0.0, e.omega) * e.amplitude * std::polar(1.0, e.omega * t);
  return p;
}

double identity_residual(const TrigPolynomial& f, const TrigPolynomial& f_t, const TrigPolynomial& g,
                         const TrigPolynomial& g_t) {
  // d_t T(f, g) by bilinearity.
  const TrigPolynomial lhs = normal_form_T(f_t, g) + normal_form_T(f, g_t) + normal_form_T(f, g).dx(3);
  const TrigPolynomial rhs = normal_form_T(f_t + f.dx(3), g) + normal_form_T(f, g_t) + product(f, g.dx(1));
  return (lhs - rhs).max_abs();
}

double verify_identity(const ExpPath& f, const ExpPath& g, double t) {
  using lcplx = std::complex<long double>;
  const lcplx I(0.0L, 1.0L);
  std::map<int, lcplx> res;
  for (const auto& b : g.terms)
    if (b.k == 0 && b.amplitude != cplx(0.0)) throw MeanZeroViolation("verify_identity: g has a mean mode");
  // Each interaction (a, b) feeds output mode k = a.k + b.k with the common factor
  // a b e^{i(omega_a + omega_b) t}; the four terms are evaluated separately.
  for (const auto& a : f.terms)
    for (const auto& b : g.terms) {
      if (b.k == 0) continue;
      const long double k1 = a.k, k2 = b.k, k = k1 + k2;
      const long double m = -1.0L / (k1 * k1 + k * k + k1 * k);
      const lcplx amp = lcplx(a.amplitude) * lcplx(b.amplitude) *
                        lcplx(std::polar(1.0L, static_cast<long double>(a.omega + b.omega) * t));
      const lcplx lhs = m * I * (static_cast<long double>(a.omega) + b.omega - k * k * k) * amp;
      const lcplx t_f = m * I * (static_cast<long double>(a.omega) - k1 * k1 * k1) * amp;
      const lcplx t_g = m * I * static_cast<long double>(b.omega) * amp;
      const lcplx prod = I * k2 * amp;
      res[a.k + b.k] += lhs - t_f - t_g - prod;
    }
  long double worst = 0.0L;
  for (const auto& [k, r] : res) worst = std::max(worst, std::abs(r));
  return static_cast<double>(worst);
}

double substitution_residual(const TrigPolynomial& u, const TrigPolynomial& v0) {
  const TrigPolynomial flux = product(u, v0).dx(1);
  const TrigPolynomial u_t = (-1.0) * (u.dx(3) + flux);
  const TrigPolynomial lhs = normal_form_T(u_t, v0) + normal_form_T(u, v0).dx(3);
  const TrigPolynomial rhs = normal_form_T((-1.0) * flux, v0) + product(u, v0.dx(1));
  return (lhs - rhs).max_abs();
}

double smoothing_quotient(int k1, int k2) {
  if (k2 == 0) throw MeanZeroViolation("smoothing_quotient: k2 must be nonzero");
  const int k = k1 + k2;
  const TrigPolynomial out = normal_form_T(TrigPolynomial::mode(k1), TrigPolynomial::mode(k2));
  return std::sqrt(1.0 + static_cast<double>(k) * k) * std::abs(out.at(k));
}

}  // namespace dsw
