#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dsw/errors.hpp"
#include "dsw/spectral.hpp"
#include "dsw/wave_family.hpp"
#include "table1.hpp"

using namespace dsw;

TEST(WaveParams, SpeedsAgreeWithReferenceTable) {
  for (const auto& row : testdata::table1()) {
    // The L = 50 row's reference speed belongs to kappa = 0.2 (see theta tests).
    const double kappa = row.L == 50 ? 0.2 : row.kappa;
    const WaveParams p = params_from_kappa(row.L, Modulus(kappa));
    EXPECT_NEAR(p.c, row.c, 5e-5 * row.c) << row.L << ' ' << row.kappa;
    EXPECT_NEAR(p.alpha, row.p_prime_0, 5e-5 * row.p_prime_0) << row.L << ' ' << row.kappa;
  }
}

TEST(WaveParams, StructuralInvariantsHold) {
  for (double L : {0.5, 1.0, 2.0, 10.0, 50.0})
    for (double k : {0.01, 0.1, 0.5, 0.9, 0.99}) {
      const WaveParams p = params_from_kappa(L, Modulus(k));
      EXPECT_LT(invariant_violation(p), 1e-12) << L << ' ' << k;
      EXPECT_GT(p.c, speed_threshold(L));
      EXPECT_NEAR(p.alpha, 2 * p.K / L, 1e-15 * p.alpha);
      EXPECT_LT(p.F1, 0.0);
    }
}

TEST(WaveParams, RejectsDegenerateInputs) {
  EXPECT_THROW(params_from_kappa(1.0, Modulus(0.0)), DomainError);
  EXPECT_THROW(params_from_kappa(-1.0, Modulus(0.3)), DomainError);
  EXPECT_THROW(kappa_from_c(2.0, speed_threshold(2.0)), BelowThresholdError);
  EXPECT_THROW(kappa_from_c(2.0, 1.0), BelowThresholdError);
}

TEST(WaveParams, SpeedIsMonotoneAndInvertible) {
  const double L = 2.0;
  double prev = speed_threshold(L);
  for (double k = 0.05; k < 0.99; k += 0.05) {
    const WaveParams p = params_from_kappa(L, Modulus(k));
    EXPECT_GT(p.c, prev);
    prev = p.c;
    EXPECT_NEAR(kappa_from_c(L, p.c).value(), k, 1e-10);
    const double h = 1e-6;
    const double fd = (params_from_kappa(L, Modulus(k + h)).c - params_from_kappa(L, Modulus(k - h)).c) / (2 * h);
    EXPECT_NEAR(dspeed_dkappa(L, Modulus(k)), fd, 1e-6 * std::abs(fd) + 1e-8);
  }
  // Roundtrip through the speed of the first reference row.
  EXPECT_NEAR(kappa_from_c(2.0, 9.87007).value(), 0.1, 1e-3);
}

TEST(Profile, SolvesTheProfileOdeAndItsFirstIntegral) {
  for (double k : {0.1, 0.5, 0.9}) {
    const WaveParams p = params_from_kappa(2.0, Modulus(k));
    const ProfileResidual r = profile_residual(p, 512);
    const double pm = eval_profile(p, 0).psi;
    const double scale = 1.0 + p.c * pm + pm * pm * pm / p.c;
    EXPECT_LT(r.r1, 1e-9 * scale) << k;
    EXPECT_LT(r.r2, 1e-9 * scale) << k;
    // A perturbed amplitude is not a solution.
    const ProfileResidual bad = profile_residual(p, 512, 1.01);
    EXPECT_GT(bad.r1, 1e3 * r.r1);
  }
  EXPECT_THROW(profile_residual(params_from_kappa(2.0, Modulus(0.3)), 32), ShapeError);
}

TEST(Profile, JetMatchesSpectralDerivatives) {
  const WaveParams p = params_from_kappa(3.0, Modulus(0.6));
  const std::size_t N = 256;
  const GridFunction psi = sample_psi(p, N);
  const GridFunction d1 = spectral_derivative(psi, 1);
  const GridFunction d2 = spectral_derivative(psi, 2);
  for (std::size_t j = 0; j < N; j += 7) {
    const ProfileJet jet = eval_profile_jet(p, psi.x(j));
    EXPECT_NEAR(jet.psi, psi.samples[j], 1e-15 * std::abs(jet.psi) + 1e-15);
    EXPECT_NEAR(jet.dpsi, d1.samples[j], 1e-9);
    EXPECT_NEAR(jet.d2psi, d2.samples[j], 1e-8);
  }
}

TEST(Profile, EvenPeriodicAndHalfPeriodValues) {
  const WaveParams p = params_from_kappa(4.0, Modulus(0.5));
  for (double x : {0.1, 0.9, 1.7}) {
    EXPECT_NEAR(eval_profile(p, x).psi, eval_profile(p, x + p.L).psi, 1e-14);
    EXPECT_NEAR(eval_profile(p, x).psi, eval_profile(p, p.L - x).psi, 1e-14);
    const auto v = eval_profile(p, x);
    EXPECT_NEAR(v.phi, v.psi * v.psi / (2 * p.c), 1e-16);
  }
  const ProfileJet half = eval_profile_jet(p, p.L / 2);
  EXPECT_NEAR(psi_half(p), half.psi, 1e-14);
  EXPECT_NEAR(psi_second_half(p), half.d2psi, 1e-12 * std::abs(half.d2psi));
  EXPECT_NEAR(half.dpsi, 0.0, 1e-14);
}

TEST(Conserved, SimpleFields) {
  const double L = 2 * std::numbers::pi;
  std::vector<double> u(64), v(64, 0.5);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sin(L * j / 64.0);
  const ConservedQuantities q = conserved_quantities(GridFunction(L, u), GridFunction(L, v));
  EXPECT_NEAR(q.m_u, 0.0, 1e-14);
  EXPECT_NEAR(q.m_v, 0.5 * L, 1e-14);
  // int cos^2 - 0.5 sin^2 = pi - pi / 2.
  EXPECT_NEAR(q.e_mixed, std::numbers::pi / 2, 1e-13);
  EXPECT_NEAR(q.l2, std::numbers::pi + 0.25 * L, 1e-13);
}
