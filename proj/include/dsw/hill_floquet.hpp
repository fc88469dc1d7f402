#pragma once

#include "dsw/wave_family.hpp"

namespace dsw {

struct HillSolution {
  WaveParams params;
  double q_final;        // q(L)
  double q_prime_final;  // q'(L)
  double p_prime_0;      // 2 K / L
  double theta;          // q'(L) / p'(0)
  double wronskian_drift;
};

/// Periodic kernel element of L+ (proportional to psi'):
/// sn cn dn / (1 + beta^2 sn^2)^2 evaluated at alpha xi.
double p_eigenfunction(const WaveParams& p, double xi);
double p_eigenfunction_derivative(const WaveParams& p, double xi);

/// Integrates -q'' + (c - 3 psi^2/(2c)) q = 0, q(0) = 1/p'(0), q'(0) = 0 on
/// [0, L] with an adaptive embedded Runge-Kutta-Fehlberg 7(8) scheme.
HillSolution integrate_hill_ivp(const WaveParams& p, double tol = 1e-12);

struct InertialIndex {
  int n_minus;
  int n_zero;
};

/// Number of zeros of the kernel element p on [0, L).
inline constexpr int kKernelZeros = 2;

/// Classify the zero eigenvalue of L+ from the sign of theta.
/// theta > 0: zero is the lower eigenvalue of its Floquet pair, so it is
/// preceded by 2n-1 = 1 negative eigenvalue; theta < 0: by 2n = 2.
InertialIndex inertial_index_from_theta(const HillSolution& h);

/// Threshold below which the classification is refused.
inline constexpr double kThetaDegeneracy = 1e-10;

}  // namespace dsw
