#pragma once

#include <complex>
#include <map>
#include <vector>

namespace dsw {

/// Finitely supported trigonometric polynomial sum_k c_k e^{ikx}.
struct TrigPolynomial {
  std::map<int, std::complex<double>> coeffs;

  static TrigPolynomial mode(int k, std::complex<double> a = 1.0);

  bool has_mean() const;
  std::complex<double> at(int k) const;
  /// c_{-k} = conj(c_k) for all k (represents a real field).
  bool is_real(double tol = 1e-14) const;
  double max_abs() const;

  TrigPolynomial& operator+=(const TrigPolynomial& o);
  TrigPolynomial& operator-=(const TrigPolynomial& o);
  TrigPolynomial& operator*=(std::complex<double> s);

  /// Multiplies every coefficient by (ik)^n.
  TrigPolynomial dx(int n = 1) const;
};

TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b);
TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b);
TrigPolynomial operator*(std::complex<double> s, TrigPolynomial a);

/// Pointwise product (convolution of coefficients).
TrigPolynomial product(const TrigPolynomial& a, const TrigPolynomial& b);

TrigPolynomial remove_mean(TrigPolynomial g);

/// Symbol of the normal-form multiplier for input mode k1 and output mode k.
double normal_form_symbol(int k1, int k);

/// T(f, g)_k = sum_{k1 + k2 = k, k2 != 0} m(k1, k) f_{k1} g_{k2}, by direct
/// double summation. Throws MeanZeroViolation if g carries a mean.
TrigPolynomial normal_form_T(const TrigPolynomial& f, const TrigPolynomial& g);

/// Time-dependent polynomial sum_j a_j e^{i omega_j t} e^{i k_j x}; the time
/// derivative is exact.
struct ExpTerm {
  int k;
  std::complex<double> amplitude;
  double omega;
};

struct ExpPath {
  std::vector<ExpTerm> terms;

  TrigPolynomial at(double t) const;
  TrigPolynomial dt(double t) const;
};

/// sup_k of (d_t + d_xxx) T(f, g) - T((d_t + d_xxx) f, g) - T(f, d_t g) - f d_x g
/// at time t, evaluated interaction by interaction in extended precision.
double verify_identity(const ExpPath& f, const ExpPath& g, double t);

/// Same identity assembled from whole-operator outputs in double precision,
/// given instantaneous values and time derivatives. Rounding grows with the
/// coefficient sums, so compare against a scale-relative tolerance.
double identity_residual(const TrigPolynomial& f, const TrigPolynomial& f_t,
                         const TrigPolynomial& g, const TrigPolynomial& g_t);

/// The identity with u driven by u_t + u_xxx = -(u v)_x and a static
/// mean-zero v0 (so v = v0):
/// (d_t + d_xxx) T(u, v0) = T(-(u v0)_x, v0) + u d_x v0.
double substitution_residual(const TrigPolynomial& u, const TrigPolynomial& v0);

/// Smoothing measure for single modes: <k> |T(e^{ik1 x}, e^{ik2 x})_k| with
/// k = k1 + k2 and <k> = sqrt(1 + k^2). Decays like 1/|k2| at fixed k1.
double smoothing_quotient(int k1, int k2);

}  // namespace dsw
