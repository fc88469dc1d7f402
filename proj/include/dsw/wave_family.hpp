#pragma once

#include <cstddef>

#include "dsw/elliptic.hpp"
#include "dsw/spectral.hpp"

namespace dsw {

/// One member of the explicit periodic wave family
///   psi(xi) = eta4 dn^2(alpha xi) / (1 + beta^2 sn^2(alpha xi)),  phi = psi^2 / (2c).
struct WaveParams {
  double L;
  Modulus kappa;
  double c;
  double h;
  double eta1;
  double eta3;
  double eta4;
  double beta_sq;
  double F1;
  double a;
  double alpha;  // 2 K / L
  double K;
  static constexpr double E_const = 0.0;
  static constexpr double D1_const = 0.0;

  double kappa_sq() const noexcept { return kappa.value() * kappa.value(); }
  /// kappa^2 + beta^2, a combination that shows up everywhere downstream.
  double kb() const noexcept { return kappa_sq() + beta_sq; }
};

/// Lowest admissible speed 4 pi^2 / L^2.
double speed_threshold(double L);

WaveParams params_from_kappa(double L, Modulus kappa);

/// dc/dkappa at fixed L (used by the Newton polish and tests).
double dspeed_dkappa(double L, Modulus kappa);

Modulus kappa_from_c(double L, double c);

/// Maximum violation of the structural invariants (root sum, ordering,
/// period identity, beta^2 identity, F1 identity). Zero-ish for a valid wave.
double invariant_violation(const WaveParams& p);

struct ProfileValue {
  double psi;
  double phi;
};

ProfileValue eval_profile(const WaveParams& p, double xi);

/// psi, psi', psi'' at xi from the closed form.
struct ProfileJet {
  double psi;
  double dpsi;
  double d2psi;
};
ProfileJet eval_profile_jet(const WaveParams& p, double xi);

/// psi and phi sampled on the grid x_j = j L / N.
GridFunction sample_psi(const WaveParams& p, std::size_t N);
GridFunction sample_phi(const WaveParams& p, std::size_t N);

/// Closed-form values at the half period.
double psi_half(const WaveParams& p);
double psi_second_half(const WaveParams& p);

struct ProfileResidual {
  double r1;  // sup |psi'' + psi^3/(2c) - c psi - F1|
  double r2;  // sup |psi'^2/2 + U(psi)|
};

/// Residuals of the profile ODE and its first integral, with derivatives
/// taken spectrally. `eta4_scale` perturbs the amplitude (1 for the exact wave).
ProfileResidual profile_residual(const WaveParams& p, std::size_t N, double eta4_scale = 1.0);

struct ConservedQuantities {
  double m_u;
  double m_v;
  double e_mixed;  // int (u_x^2 - u^2 v)
  double l2;       // int (u^2 + v^2)
};

ConservedQuantities conserved_quantities(const GridFunction& u, const GridFunction& v);

}  // namespace dsw
