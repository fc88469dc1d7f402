#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cli.hpp"
#include "dsw/errors.hpp"
#include "dsw/evolution.hpp"
#include "dsw/wave_family.hpp"

using namespace dsw;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

GridFunction mode(std::size_t N, double L, int k, double amp) {
  std::vector<double> s(N);
  for (std::size_t j = 0; j < N; ++j) s[j] = amp * std::cos(2 * std::numbers::pi * k * j / static_cast<double>(N));
  return GridFunction(L, std::move(s));
}

}  // namespace

TEST(Evolution, TravelingWaveIsStationaryInItsFrame) {
  const WaveParams p = params_from_kappa(2.0, Modulus(0.3));
  const std::size_t N = 128;
  const GridFunction psi = sample_psi(p, N), phi = sample_phi(p, N);
  for (Scheme sch : {Scheme::ETDRK4}) {
    SimulateOptions o;
    o.step.scheme = sch;
    const Trajectory tr = simulate(psi, phi, 1.0, 1e-3, p.c, o);
    const LabFields f = frame_fields(tr.states.back());
    EXPECT_LT(max_abs_diff(f.u.samples, psi.samples), 1e-9 * p.eta4);
    EXPECT_LT(max_abs_diff(f.v.samples, phi.samples), 1e-9 * p.eta4);
    EXPECT_LT(tr.max_drift(), 1e-10);
  }
}

TEST(Evolution, LabFrameTranslatesTheWave) {
  const WaveParams p = params_from_kappa(2.0, Modulus(0.3));
  const std::size_t N = 128;
  const double T = 0.05;
  const Trajectory tr = simulate(sample_psi(p, N), sample_phi(p, N), T, 1e-3, p.c);
  const LabFields lab = postprocess(tr.states.back());
  for (std::size_t j = 0; j < N; j += 9)
    EXPECT_NEAR(lab.u.samples[j], eval_profile(p, lab.u.x(j) - p.c * T).psi, 1e-9 * p.eta4);
}

TEST(Evolution, SmallAmplitudeModeFollowsTheAiryDispersion) {
  // u = eps cos(k x), v = 0: to O(eps^2), u = eps cos(k x + k^3 t).
  const std::size_t N = 64;
  const double L = 2 * std::numbers::pi, eps = 1e-9, T = 0.3;
  for (Scheme sch : {Scheme::ETDRK4, Scheme::IFRK4}) {
    SimulateOptions o;
    o.step.scheme = sch;
    const Trajectory tr = simulate(mode(N, L, 3, eps), mode(N, L, 0, 0.0), T, 1e-3, 0.0, o);
    const LabFields f = postprocess(tr.states.back());
    for (std::size_t j = 0; j < N; ++j)
      ASSERT_NEAR(f.u.samples[j], eps * std::cos(3 * f.u.x(j) + 27 * T), 1e-12 * eps * 1e3);
  }
}

TEST(Evolution, ZeroDataStaysZero) {
  const GridFunction z(4.0, std::vector<double>(32, 0.0));
  const Trajectory tr = simulate(z, z, 1.0, 1e-2, 0.0);
  const LabFields f = postprocess(tr.states.back());
  for (double x : f.u.samples) EXPECT_EQ(x, 0.0);
  for (double x : f.v.samples) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(tr.max_drift(), 0.0);
}

TEST(Evolution, ConservationOnSmoothRandomData) {
  const auto [u0, v0] = cli::smooth_random_fields(128, 4.0, 1);
  SimulateOptions o;
  o.sample_interval = 0.25;
  const Trajectory tr = simulate(u0, v0, 1.0, 1e-3, 0.0, o);
  EXPECT_EQ(tr.log.size(), 5u);
  for (double d : tr.max_rel_drift) EXPECT_LT(d, 1e-7);
  // Halving dt reduces the drift by at least a factor of 8.
  const Trajectory fine = simulate(u0, v0, 1.0, 5e-4, 0.0, o);
  EXPECT_LT(fine.max_drift(), tr.max_drift() / 8);
}

TEST(Evolution, PreprocessRemovesTheMeanOfV) {
  const std::size_t N = 64;
  const double L = 3.0;
  std::vector<double> v(N);
  for (std::size_t j = 0; j < N; ++j) v[j] = 0.7 + 0.1 * std::sin(2 * std::numbers::pi * j / double(N));
  const GridFunction u0 = mode(N, L, 1, 0.2), v0(L, v);
  const Preprocessed pre = preprocess(u0, v0);
  EXPECT_NEAR(pre.rec.g0, 0.7, 1e-14);
  double mean = 0;
  for (double x : pre.v0.samples) mean += x / N;
  EXPECT_NEAR(mean, 0.0, 1e-15);
  // Evolving the shifted problem and mapping back equals evolving directly.
  const Trajectory direct = simulate(u0, v0, 0.2, 1e-3, 0.0);
  const Trajectory shifted = simulate_state(make_state(pre.u0, pre.v0, 0.0, pre.rec.g0), 0.2, 1e-3);
  const LabFields a = postprocess(direct.states.back()), b = postprocess(shifted.states.back());
  EXPECT_LT(max_abs_diff(a.u.samples, b.u.samples), 1e-10);
  EXPECT_LT(max_abs_diff(a.v.samples, b.v.samples), 1e-10);
}

TEST(Evolution, BlowUpIsReportedWithTheLastFiniteTime) {
  // Large steep data with a huge step is far outside the stable regime.
  const std::size_t N = 64;
  std::vector<double> u(N, 0.0);
  for (std::size_t j = 0; j < N; ++j) u[j] = 1e4 * std::exp(-50.0 * std::pow(j / double(N) - 0.5, 2));
  const GridFunction u0(1.0, u), v0(1.0, u);
  Trajectory partial;
  try {
    simulate(u0, v0, 10.0, 0.05, 0.0, {}, &partial);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_GE(e.last_finite_time(), 0.0);
    EXPECT_LT(e.last_finite_time(), 10.0);
    EXPECT_FALSE(partial.log.empty());
  }
}

TEST(Evolution, ParameterValidation) {
  const GridFunction z(1.0, std::vector<double>(32, 0.0));
  EXPECT_THROW(simulate(z, z, -1.0, 1e-3, 0.0), DomainError);
  EXPECT_THROW(simulate(z, z, 1.0, 0.0, 0.0), DomainError);
  EXPECT_THROW(Stepper(24, 1.0), ShapeError);
  EXPECT_THROW(fit_log_slope({1.0}, {1.0}), ShapeError);
}

TEST(GrowthFit, LogSlopeIsExactForExponentials) {
  std::vector<double> t, y;
  for (int i = 0; i < 20; ++i) {
    t.push_back(0.1 * i);
    y.push_back(3e-6 * std::exp(2.5 * t.back()));
  }
  EXPECT_NEAR(fit_log_slope(t, y), 2.5, 1e-12);
  y[3] = 0.0;
  EXPECT_THROW(fit_log_slope(t, y), NumericalFailure);
}

TEST(GrowthFit, ReportsAbsenceOfAnUnstableMode) {
  const WaveParams p = params_from_kappa(2.0, Modulus(0.3));
  EXPECT_THROW(growth_rate_experiment(p, 1e-6, 1.0), NoUnstableModeError);
  EXPECT_THROW(growth_rate_experiment(p, 1.0, 1.0), DomainError);
}

TEST(GrowthFit, NeutralSeedHasNoGrowth) {
  // Seeding along the translation mode (psi', phi') only shifts the wave, so
  // the deviation stays at its initial size and the fitted rate is ~0.
  const WaveParams p = params_from_kappa(2.0, Modulus(0.3));
  const std::size_t N = 256;
  std::vector<double> U(N), V(N);
  for (std::size_t j = 0; j < N; ++j) {
    const auto jet = eval_profile_jet(p, p.L * j / N);
    U[j] = jet.dpsi;
    V[j] = jet.psi * jet.dpsi / p.c;
  }
  const GrowthFit g = growth_rate_with_seed(p, U, V, 1.0, 1e-6, 1.0);
  EXPECT_LT(std::abs(g.lambda_fit), 1e-3);
  EXPECT_NEAR(g.initial_deviation, 1e-6, 1e-8);
}

TEST(Evolution, DerivativeNormStaysBounded) {
  const auto [u0, v0] = cli::smooth_random_fields(128, 4.0, 1);
  SimulateOptions o;
  o.sample_interval = 1.0;
  const Trajectory tr = simulate(u0, v0, 10.0, 1e-3, 0.0, o);
  auto ux_norm = [](const SimState& s) {
    const GridFunction ux = spectral_derivative(frame_fields(s).u, 1);
    double n = 0.0;
    for (double x : ux.samples) n += x * x;
    return std::sqrt(n * ux.L / static_cast<double>(ux.size()));
  };
  const double n0 = ux_norm(tr.states.front());
  for (const auto& s : tr.states) EXPECT_LT(ux_norm(s), 1.5 * n0) << s.t;
}
