#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "dsw/index_engine.hpp"
#include "dsw/wave_family.hpp"

namespace dsw {

enum class OperatorKind { Lplus, Lminus, Hcal, dHcal };

std::string to_string(OperatorKind k);

/// Dense Fourier-collocation matrix of one of the linearized operators.
struct OperatorMatrix {
  OperatorKind kind;
  std::size_t N;  // grid points; the matrix is N x N or 2N x 2N
  double L;
  double c;
  Eigen::MatrixXd m;

  bool symmetric_kind() const noexcept { return kind != OperatorKind::dHcal; }
};

/// Spectral differentiation matrices on N points over period L. The first
/// derivative drops the Nyquist mode so it stays real and skew.
Eigen::MatrixXd spectral_d1_matrix(std::size_t N, double L);
Eigen::MatrixXd spectral_d2_matrix(std::size_t N, double L);

OperatorMatrix assemble(OperatorKind kind, const WaveParams& p, std::size_t N);

/// Same operators built around an arbitrary sampled profile psi and speed c.
OperatorMatrix assemble_from_profile(OperatorKind kind, const GridFunction& psi, double c);

struct MorseIndex {
  int n_neg;
  int n_zero;
};

/// Default zero tolerance: 1e3 * eps * spectral radius.
double default_zero_tol(const OperatorMatrix& m);

/// Counts eigenvalues below -zero_tol and within zero_tol. A negative
/// zero_tol selects default_zero_tol.
MorseIndex morse_index(const OperatorMatrix& m, double zero_tol = -1.0);

/// |cos angle| between the eigenvector of smallest |lambda| and `target`.
double kernel_alignment(const OperatorMatrix& m, const Eigen::VectorXd& target);

/// Sampled psi' and (psi', phi') used for the kernel checks.
Eigen::VectorXd sampled_dpsi(const WaveParams& p, std::size_t N);
Eigen::VectorXd sampled_dpsi_dphi(const WaveParams& p, std::size_t N);

enum class EigenClass { Zero, Real, Imaginary, Quadruplet };

std::string to_string(EigenClass c);

struct ClassifiedEigenvalue {
  std::complex<double> lambda;
  EigenClass cls;
  int krein_sign;            // +1/-1 for imaginary eigenvalues, 0 otherwise
  double symmetry_residual;  // distance to the nearest of -lambda, conj(lambda), relative
};

struct SpectrumReport {
  std::size_t N;
  std::vector<ClassifiedEigenvalue> eigenvalues;  // sorted by descending Re, then Im
  int n_Lplus;
  int n_H;
  double kernel_overlap_Lplus;
  double kernel_overlap_H;
  int k_r;
  int k_c;
  int krein_negative;
  int zero_cluster_size;
  double zero_cluster_radius;
  double snap_tol;
  double max_symmetry_residual;
  double max_real_part;  // largest Re lambda outside the zero cluster
  int k_ham_spectral() const noexcept { return k_r + 2 * k_c + 2 * krein_negative; }
};

/// Full nonsymmetric eigensolve of the collocated d_xi H, classified into
/// symmetry classes with Krein signatures on the imaginary axis.
SpectrumReport unstable_modes(const WaveParams& p, std::size_t N = 256);

/// Count identity k_r + 2 k_c + 2 k_i^- against n_H - n(D).
struct CountIdentity {
  int lhs;
  int rhs;
  bool holds;
};
CountIdentity count_identity(const SpectrumReport& r, const DMatrix& d, int n_H);

/// Leading eigenpair of d_xi H outside the zero cluster: the eigenvalue with
/// the largest real part and the real part of its eigenvector, split into
/// (U, V) samples.
struct LeadingMode {
  std::complex<double> lambda;
  std::vector<double> U;
  std::vector<double> V;
  double snap_tol;
};
LeadingMode leading_mode(const WaveParams& p, std::size_t N);

/// D assembled directly from the collocated H: <H^+ r_i, r_j> with
/// r = (1, 0), (0, 1), (psi, psi^2/(2c)), H^+ the pseudo-inverse off the kernel.
std::array<std::array<double, 3>, 3> spectral_dmatrix(const WaveParams& p, std::size_t N);

}  // namespace dsw
