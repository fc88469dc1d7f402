#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "dsw/wave_family.hpp"

namespace dsw {

struct AIntegrals {
  double A1, A2, A3, A4, A5, A6;
};

/// The six quadratures over [0, K] that close the pairings of the kernel
/// companion. A5 has the same integrand as A2.
AIntegrals a_integrals(const WaveParams& p, double tol = 1e-13);

/// int_0^L psi^n for n = 1..4.
double psi_power_integral(const WaveParams& p, int n, double tol = 1e-13);

/// Second, non-periodic solution varphi of L+ varphi = 0 with
/// psi' varphi' - psi'' varphi = 1, tabulated on x_j = j L / N, j = 0..N.
///
/// varphi(x) = C0 [B(y) - S(y) J(y)], y = alpha x, where J is the running
/// integral of an even, 2K-periodic integrand G. J is accumulated once per
/// cell with Gauss-Legendre and extended by J(y + 2K) = J(y) + 2 A2.
class VarphiTable {
 public:
  VarphiTable(const WaveParams& p, std::size_t N);

  const WaveParams& params() const noexcept { return params_; }
  std::size_t size() const noexcept { return n_; }
  double x(std::size_t j) const noexcept { return params_.L * static_cast<double>(j) / static_cast<double>(n_); }

  /// Samples at j = 0..N (N+1 values, the last one at x = L).
  const std::vector<double>& values() const noexcept { return phi_; }
  const std::vector<double>& derivatives() const noexcept { return dphi_; }
  const std::vector<double>& inner_cumulative() const noexcept { return J_; }

  double varphi_0() const noexcept { return phi_.front(); }
  /// varphi'(L/2) from the closed form in A2.
  double varphi_half_prime() const noexcept { return half_prime_; }
  double A2() const noexcept { return A2_; }

  /// Off-grid evaluation for any real x.
  double value(double x) const;
  double derivative(double x) const;
  double inner(double y) const;  // J(y)

  /// Gauss nodes inside each cell, reused by linv_apply and direct pairings.
  static constexpr int kCellOrder = 8;
  const std::vector<double>& cell_node_values() const noexcept { return phi_nodes_; }
  const std::vector<double>& cell_node_dpsi() const noexcept { return dpsi_nodes_; }

  /// <varphi, g> over [-L/2, L/2] by cell-wise Gauss quadrature, for even g.
  double direct_pairing(const std::function<double(double)>& g) const;

 private:
  struct Local {
    double B, dB, S, dS, G;
  };
  Local local(double y) const;
  double G(double y) const;
  double inner_reduced(double y) const;  // y in [0, 2K]

  WaveParams params_;
  std::size_t n_;
  double C0_;
  double A2_;
  double half_prime_;
  std::vector<double> J_;
  std::vector<double> phi_;
  std::vector<double> dphi_;
  std::vector<double> phi_nodes_;
  std::vector<double> dpsi_nodes_;
};

VarphiTable build_varphi(const WaveParams& p, std::size_t N = 2048);

/// varphi'(L) - varphi'(0); nonzero exactly when A2 != 0.
double non_periodicity_gap(const VarphiTable& t);

struct VarphiPairings {
  double ip_1;    // <varphi, 1>
  double ip_psi;  // <varphi, psi>
};

/// Closed-form pairings from the A integrals (over [-L/2, L/2]).
VarphiPairings varphi_pairings(const WaveParams& p, const VarphiTable& t);
VarphiPairings varphi_pairings(const WaveParams& p, const AIntegrals& A);

struct LinvResult {
  GridFunction g;
  double asymmetry;        // relative size of the odd part removed from f
  double endpoint_gap;     // |g(L) - g(0)|
  double endpoint_dgap;    // |g'(L) - g'(0)|
};

/// Solves L+ g = f for even L-periodic f, returning the even periodic solution
///   g = psi' int_0^x varphi f - varphi int_0^x psi' f + C_f varphi.
/// f may be given on any power-of-two grid no finer than the table.
LinvResult linv_apply(const WaveParams& p, const VarphiTable& t, const GridFunction& f);

/// Symmetric 3x3 matrix of pairings <H e_i, e_j> over the generalized kernel.
struct DMatrix {
  std::array<std::array<double, 3>, 3> entries;
  double det;
  std::array<double, 3> eigenvalues;  // ascending
  int n_negative;
  Modulus kappa;
  double L;
};

/// Scalar ingredients of D, kept for reporting and cross-checks.
struct DScalars {
  AIntegrals A;
  double psi_half, psi_second_half, varphi_half_prime;
  double ip_varphi_1, ip_varphi_psi, ip_varphi_psi2, ip_varphi_psi3;
  double I1, I2, I3, I4;  // int psi^n over a period
  double linv_1_1, linv_1_psi, linv_psi_psi;        // <L+^{-1} f, g>
  double linv_psi3_1, linv_psi3_psi, linv_psi3_psi3;
};

DScalars dmatrix_scalars(const WaveParams& p);
DMatrix dmatrix_from_scalars(const WaveParams& p, const DScalars& s);

/// Throws DegenerateMatrixError when |det D| < 1e-12 ||D||^3.
DMatrix assemble_dmatrix(const WaveParams& p);

/// Eigenvalues of a symmetric 3x3 matrix from its characteristic cubic.
std::array<double, 3> symmetric3_eigenvalues(const std::array<std::array<double, 3>, 3>& m);

/// Wraps entries into a DMatrix (det, eigenvalues, n_negative), checking
/// symmetry and degeneracy.
DMatrix make_dmatrix(const std::array<std::array<double, 3>, 3>& m, Modulus kappa, double L);

struct HamiltonianIndex {
  int k_ham;
  int n_D;
  bool consistent;  // k_ham >= 0
};

/// k_Ham = n_H - n(D). The default n_H = 2 is the Morse index the count
/// formula is usually stated with; pass a measured n(H) to override.
HamiltonianIndex hamiltonian_index(const DMatrix& d, int n_H = 2);

}  // namespace dsw
