#pragma once

// Fourier-collocation reference for L+^{-1} and the D matrix. Built only from
// an explicit DFT matrix, Boost's Jacobi functions and dense Eigen solves, so
// it shares no code path with the quadrature pipeline or operator_spectra.

#include <Eigen/Dense>
#include <array>
#include <cstddef>

#include "dsw/wave_family.hpp"

namespace dsw::oracle {

/// psi sampled at x_j = j L / N from the closed form via boost::math.
Eigen::VectorXd profile(const WaveParams& p, std::size_t N);

/// Second-derivative matrix Re(F^{-1} diag(-k^2) F) from explicit DFT matrices.
Eigen::MatrixXd fourier_d2(std::size_t N, double L);

class LplusOracle {
 public:
  LplusOracle(const WaveParams& p, std::size_t N);

  /// Pseudo-inverse applied to f, with the smallest-|lambda| eigenvector
  /// (the translation mode) projected out.
  Eigen::VectorXd solve(const Eigen::VectorXd& f) const;

  /// <L+^{-1} f, g> over one period (trapezoid, spectrally accurate).
  double pairing(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

  const Eigen::VectorXd& psi() const { return psi_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }

 private:
  double h_;
  Eigen::VectorXd psi_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
  Eigen::Index kernel_;
};

/// D_ij = <H^+ r_i, r_j> with r = (1, 0), (0, 1), (psi, psi^2 / (2c)).
std::array<std::array<double, 3>, 3> dmatrix(const WaveParams& p, std::size_t N);

}  // namespace dsw::oracle
