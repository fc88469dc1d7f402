#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "collocation_oracle.hpp"
#include "dsw/errors.hpp"
#include "dsw/index_engine.hpp"
#include "dsw/operator_spectra.hpp"
#include "dsw/wave_family.hpp"

using namespace dsw;

namespace {
WaveParams wave(double L, double k) { return params_from_kappa(L, Modulus(k)); }
}  // namespace

TEST(Collocation, DifferentiationMatricesAreExactOnTrigPolynomials) {
  const std::size_t N = 32;
  const double L = 3.0;
  const Eigen::MatrixXd D1 = spectral_d1_matrix(N, L);
  const Eigen::MatrixXd D2 = spectral_d2_matrix(N, L);
  Eigen::VectorXd f(N), df(N), d2f(N);
  const double w = 2 * std::numbers::pi / L;
  for (std::size_t j = 0; j < N; ++j) {
    const double x = L * j / N;
    f(j) = std::sin(3 * w * x) + 0.5 * std::cos(7 * w * x);
    df(j) = 3 * w * std::cos(3 * w * x) - 3.5 * w * std::sin(7 * w * x);
    d2f(j) = -9 * w * w * std::sin(3 * w * x) - 24.5 * w * w * std::cos(7 * w * x);
  }
  EXPECT_LT((D1 * f - df).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LT((D2 * f - d2f).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((D2 - oracle::fourier_d2(N, L)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((D1 + D1.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(spectral_d1_matrix(24, L), ShapeError);
}

TEST(Morse, LplusHasOneNegativeEigenvalueAndTheTranslationKernel) {
  for (double k : {0.3, 0.7}) {
    const WaveParams p = wave(2.0, k);
    for (std::size_t N : {128u, 256u}) {
      const OperatorMatrix Lp = assemble(OperatorKind::Lplus, p, N);
      const MorseIndex m = morse_index(Lp);
      EXPECT_EQ(m.n_neg, 1) << k << ' ' << N;
      EXPECT_EQ(m.n_zero, 1) << k << ' ' << N;
      EXPECT_GT(kernel_alignment(Lp, sampled_dpsi(p, N)), 1 - 1e-6);
    }
  }
}

TEST(Morse, HamiltonianHessianMatchesLplusCount) {
  const WaveParams p = wave(2.0, 0.3);
  const OperatorMatrix H = assemble(OperatorKind::Hcal, p, 128);
  const MorseIndex m = morse_index(H);
  EXPECT_EQ(m.n_neg, 1);
  EXPECT_EQ(m.n_zero, 1);
  EXPECT_GT(kernel_alignment(H, sampled_dpsi_dphi(p, 128)), 1 - 1e-6);
}

TEST(Morse, InputValidation) {
  const WaveParams p = wave(2.0, 0.3);
  EXPECT_THROW(assemble(OperatorKind::Lplus, p, 64), ShapeError);
  EXPECT_THROW(morse_index(assemble(OperatorKind::dHcal, p, 128)), DomainError);
  EXPECT_THROW(kernel_alignment(assemble(OperatorKind::Lplus, p, 128), Eigen::VectorXd::Ones(5)), ShapeError);
  EXPECT_THROW(unstable_modes(p, 128), ShapeError);
}

TEST(Spectrum, HamiltonianStructureAndCounts) {
  const WaveParams p = wave(2.0, 0.3);
  const SpectrumReport r = unstable_modes(p, 256);
  EXPECT_EQ(r.eigenvalues.size(), 512u);
  EXPECT_LT(r.max_symmetry_residual, 1e-7);
  EXPECT_EQ(r.zero_cluster_size, 6);
  EXPECT_EQ(r.n_Lplus, 1);
  EXPECT_EQ(r.n_H, 1);
  EXPECT_GT(r.kernel_overlap_Lplus, 1 - 1e-6);
  EXPECT_GT(r.kernel_overlap_H, 1 - 1e-6);
  // All nonzero eigenvalues sit on the imaginary axis with positive energy.
  EXPECT_EQ(r.k_r, 0);
  EXPECT_EQ(r.k_c, 0);
  EXPECT_EQ(r.krein_negative, 0);
  EXPECT_LT(r.max_real_part, 1e-6);
  const CountIdentity ci = count_identity(r, assemble_dmatrix(p), r.n_H);
  EXPECT_TRUE(ci.holds);
  EXPECT_EQ(ci.rhs, 0);
  for (std::size_t i = 1; i < r.eigenvalues.size(); ++i)
    EXPECT_GE(r.eigenvalues[i - 1].lambda.real(), r.eigenvalues[i].lambda.real() - 1e-12);
}

TEST(Spectrum, DirectGramMatrixMatchesQuadrature) {
  const WaveParams p = wave(1.0, 0.5);
  const auto s = spectral_dmatrix(p, 256);
  const DMatrix d = assemble_dmatrix(p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(s[i][j], d.entries[i][j], 1e-7 * std::abs(d.entries[i][j])) << i << j;
}

TEST(Spectrum, LeadingModeIsNotUnstable) {
  const LeadingMode m = leading_mode(wave(2.0, 0.3), 256);
  EXPECT_LT(std::abs(m.lambda.real()), 1e-6);
  EXPECT_EQ(m.U.size(), 256u);
  EXPECT_EQ(m.V.size(), 256u);
}
