#include "dsw/hill_floquet.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"

namespace dsw {

namespace odeint = boost::numeric::odeint;

double p_eigenfunction(const WaveParams& p, double xi) {
  const auto j = jacobi_sn_cn_dn(p.alpha * xi, p.kappa, p.K);
  const double w = 1.0 + p.beta_sq * j.sn * j.sn;
  return j.sn * j.cn * j.dn / (w * w);
}

double p_eigenfunction_derivative(const WaveParams& p, double xi) {
  // p = -psi' / (2 alpha eta4 kb), so p' follows from psi''.
  const auto jet = eval_profile_jet(p, xi);
  return -jet.d2psi / (2.0 * p.alpha * p.eta4 * p.kb());
}

HillSolution integrate_hill_ivp(const WaveParams& p, double tol) {
  if (!(tol >= 1e-14 && tol <= 1e-6)) throw DomainError("integrate_hill_ivp: tol must lie in [1e-14, 1e-6]");
  using State = std::array<double, 2>;
  const double c = p.c;
  auto rhs = [&p, c](const State& y, State& dy, double xi) {
    const double psi = eval_profile(p, xi).psi;
    dy[0] = y[1];
    dy[1] = (c - 1.5 * psi * psi / c) * y[0];
  };
  const double pp0 = p.alpha;  // p'(0) = alpha since sn ~ alpha xi
  State y{1.0 / pp0, 0.0};
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_fehlberg78<State>());

  double t = 0.0;
  double dt = p.L / 64.0;
  const double t_end = p.L;
  const double min_dt = 1e-14 * p.L;
  int attempts = 0;
  while (t < t_end) {
    if (t + dt > t_end) dt = t_end - t;
    if (++attempts > 10'000'000) throw IntegrationError("integrate_hill_ivp: too many steps");
    if (stepper.try_step(rhs, y, t, dt) == odeint::fail) {
      if (dt < min_dt) {
        std::ostringstream msg;
        msg << "integrate_hill_ivp: step size underflow at xi = " << t;
        throw IntegrationError(msg.str());
      }
    }
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
      throw IntegrationError("integrate_hill_ivp: non-finite state");
  }

  // Wronskian q p' - q' p with the closed-form kernel element p.
  const double w0 = (1.0 / pp0) * p_eigenfunction_derivative(p, 0.0);
  const double wL = y[0] * p_eigenfunction_derivative(p, p.L) - y[1] * p_eigenfunction(p, p.L);
  HillSolution h{p, y[0], y[1], pp0, y[1] / pp0, std::abs(wL - w0)};
  return h;
}

InertialIndex inertial_index_from_theta(const HillSolution& h) {
  if (!std::isfinite(h.theta) || std::abs(h.theta) <= kThetaDegeneracy) {
    std::ostringstream msg;
    msg << "theta = " << h.theta << " is within " << kThetaDegeneracy
        << " of zero; the zero eigenvalue may be double and cannot be classified";
    throw DegenerateThetaError(msg.str());
  }
  constexpr int n = kKernelZeros / 2;
  return h.theta > 0.0 ? InertialIndex{2 * n - 1, 1} : InertialIndex{2 * n, 1};
}

}  // namespace dsw
