#pragma once

// Complete elliptic integrals and Jacobi elliptic functions.
//
// All functions take the modulus k (not the parameter m = k^2).

namespace dsw {

/// Elliptic modulus in [0, 1). Construction rejects values the wave family
/// cannot use; moduli above 1 - 1e-9 are treated as the separatrix limit.
class Modulus {
 public:
  static constexpr double kMaxModulus = 1.0 - 1e-9;

  explicit Modulus(double kappa);

  double value() const noexcept { return kappa_; }
  double complementary() const noexcept { return kprime_; }
  operator double() const noexcept { return kappa_; }

 private:
  double kappa_;
  double kprime_;
};

/// K(k) by the arithmetic-geometric mean.
double complete_elliptic_K(Modulus kappa);

/// E(k) from the same AGM sequence (Legendre's c_n sum).
double complete_elliptic_E(Modulus kappa);

struct JacobiSnCnDn {
  double sn;
  double cn;
  double dn;
};

/// sn, cn, dn by the descending AGM / amplitude recursion. The argument is
/// first reduced modulo the real period 4K.
JacobiSnCnDn jacobi_sn_cn_dn(double u, Modulus kappa);

/// Same, with K(k) supplied by the caller to skip one AGM.
JacobiSnCnDn jacobi_sn_cn_dn(double u, Modulus kappa, double quarter_period);

}  // namespace dsw
