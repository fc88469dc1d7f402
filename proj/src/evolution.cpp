#include "dsw/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dsw/errors.hpp"
#include "dsw/operator_spectra.hpp"

namespace dsw {

namespace {

constexpr double kBlowUp = 1e12;
const cplx I(0.0, 1.0);

// Band-limited resampling between half spectra of different grid sizes.
// Modes |k| >= min(n_from, n_to)/2 are dropped (including the Nyquist mode).
std::vector<cplx> resample(const std::vector<cplx>& hat, std::size_t n_from, std::size_t n_to) {
  std::vector<cplx> out(n_to / 2 + 1, 0.0);
  const std::size_t keep = std::min(n_from, n_to) / 2;
  const double scale = static_cast<double>(n_to) / static_cast<double>(n_from);
  for (std::size_t k = 0; k < keep; ++k) out[k] = hat[k] * scale;
  return out;
}

}  // namespace

Preprocessed preprocess(const GridFunction& u0, const GridFunction& v0) {
  require_same_grid(u0, v0);
  const double g0 = periodic_integral(v0) / v0.L;
  GridFunction v = v0;
  for (auto& s : v.samples) s -= g0;
  std::ostringstream rule;
  rule << "v = v' + " << g0 << "; fields evaluated at x - " << g0 << " t";
  return {u0, v, {g0, rule.str()}};
}

SimState make_state(const GridFunction& u0, const GridFunction& v0, double frame_speed, double v_shift) {
  require_same_grid(u0, v0);
  RealFft fft(u0.size());
  SimState s;
  s.L = u0.L;
  s.N = u0.size();
  s.frame_speed = frame_speed;
  s.v_shift = v_shift;
  s.u_hat = fft.forward(u0.samples);
  s.v_hat = fft.forward(v0.samples);
  s.u_hat.back() = 0.0;
  s.v_hat.back() = 0.0;
  return s;
}

LabFields frame_fields(const SimState& s) {
  RealFft fft(s.N);
  return {GridFunction(s.L, fft.inverse(s.u_hat)), GridFunction(s.L, fft.inverse(s.v_hat))};
}

LabFields postprocess(const SimState& s) {
  const auto k = half_wavenumbers(s.N, s.L);
  const double shift = (s.frame_speed + s.v_shift) * s.t;
  auto u = s.u_hat, v = s.v_hat;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const cplx ph = std::polar(1.0, -k[j] * shift);
    u[j] *= ph;
    v[j] *= ph;
  }
  RealFft fft(s.N);
  LabFields out{GridFunction(s.L, fft.inverse(u)), GridFunction(s.L, fft.inverse(v))};
  for (auto& x : out.v.samples) x += s.v_shift;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// f(S) for the real symmetric 2x2 block S = [[a, b], [b, d]] and a scalar
// function f of its (real) eigenvalues.
struct Block {
  cplx m00, m01, m11;  // symmetric
  void apply(cplx& u, cplx& v) const {
    const cplx nu = m00 * u + m01 * v;
    const cplx nv = m01 * u + m11 * v;
    u = nu;
    v = nv;
  }
};

template <class F>
Block block_function(double a, double b, double d, F&& f) {
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  double c1 = 1.0, s1 = 0.0;  // eigenvector of mean + r
  if (r != 0.0) {
    const double theta = 0.5 * std::atan2(2.0 * b, a - d);
    c1 = std::cos(theta);
    s1 = std::sin(theta);
  }
  const cplx e1 = f(mean + r), e2 = f(mean - r);
  return {c1 * c1 * e1 + s1 * s1 * e2, c1 * s1 * (e1 - e2), s1 * s1 * e1 + c1 * c1 * e2};
}

Block block_exp(double a, double b, double d, double scale) {
  return block_function(a, b, d, [scale](double l) { return std::polar(1.0, l * scale); });
}

// ETDRK4 coefficient functions of z = i lambda h, by the contour average of
// Kassam & Trefethen (removes the cancellation at small |z|).
struct EtdScalars {
  cplx e, e2, q, f1, f2, f3;
};

EtdScalars etd_scalars(cplx z, double h) {
  constexpr int M = 32;
  EtdScalars r{std::exp(z), std::exp(0.5 * z), 0.0, 0.0, 0.0, 0.0};
  for (int m = 0; m < M; ++m) {
    const cplx w = z + std::polar(1.0, std::numbers::pi * (m + 0.5) / M * 2.0);
    const cplx ew = std::exp(w), ew2 = std::exp(0.5 * w);
    const cplx w3 = w * w * w;
    r.q += (ew2 - 1.0) / w;
    r.f1 += (-4.0 - w + ew * (4.0 - 3.0 * w + w * w)) / w3;
    r.f2 += (2.0 + w + ew * (w - 2.0)) / w3;
    r.f3 += (-4.0 - 3.0 * w - w * w + ew * (4.0 - w)) / w3;
  }
  r.q *= h / M;
  r.f1 *= h / M;
  r.f2 *= h / M;
  r.f3 *= h / M;
  return r;
}

struct EtdBlocks {
  Block e, e2, q, f1, f2, f3;
};

EtdBlocks etd_blocks(double a, double b, double d, double k, double h) {
  const double mean = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), b);
  double c1 = 1.0, s1 = 0.0;
  if (r != 0.0) {
    const double theta = 0.5 * std::atan2(2.0 * b, a - d);
    c1 = std::cos(theta);
    s1 = std::sin(theta);
  }
  const EtdScalars x = etd_scalars(cplx(0.0, k * (mean + r) * h), h);
  const EtdScalars y = etd_scalars(cplx(0.0, k * (mean - r) * h), h);
  auto mk = [&](cplx e1, cplx e2) {
    return Block{c1 * c1 * e1 + s1 * s1 * e2, c1 * s1 * (e1 - e2), s1 * s1 * e1 + c1 * c1 * e2};
  };
  return {mk(x.e, y.e), mk(x.e2, y.e2), mk(x.q, y.q), mk(x.f1, y.f1), mk(x.f2, y.f2), mk(x.f3, y.f3)};
}

}  // namespace

struct Stepper::Impl {
  std::size_t N;
  double L;
  StepOptions opts;
  std::size_t M;
  RealFft fft_m;
  std::vector<double> k;
  std::vector<double> ub, vb, pb, qb;

  // ETDRK4 coefficients depend on the step and the invariant means only.
  std::array<double, 5> etd_key{};
  std::vector<EtdBlocks> etd;

  const std::vector<EtdBlocks>& etd_coefficients(double h, double ubar, double vbar, double s,
                                                 double g0) {
    const std::array<double, 5> key{h, ubar, vbar, s, g0};
    if (!etd.empty() && key == etd_key) return etd;
    etd_key = key;
    etd.resize(N / 2 + 1);
    for (std::size_t j = 0; j < etd.size(); ++j) {
      if (j == N / 2) {
        const Block id{1.0, 0.0, 1.0}, zero{0.0, 0.0, 0.0};
        etd[j] = {id, id, zero, zero, zero, zero};
        continue;
      }
      etd[j] = etd_blocks(k[j] * k[j] + s - vbar, -ubar, s + g0, k[j], h);
    }
    return etd;
  }

  Impl(std::size_t n, double l, StepOptions o)
      : N(n), L(l), opts(o), M(o.dealias ? 3 * n / 2 : n), fft_m(M), k(half_wavenumbers(n, l)),
        ub(M), vb(M), pb(M), qb(M) {}

  // -ik P(uv) and -ik P(u^2/2).
  void nonlinear(const std::vector<cplx>& u, const std::vector<cplx>& v, std::vector<cplx>& nu,
                 std::vector<cplx>& nv) {
    const auto up = resample(u, N, M);
    const auto vp = resample(v, N, M);
    fft_m.inverse(up.data(), ub.data());
    fft_m.inverse(vp.data(), vb.data());
    for (std::size_t j = 0; j < M; ++j) {
      pb[j] = ub[j] * vb[j];
      qb[j] = 0.5 * ub[j] * ub[j];
    }
    std::vector<cplx> ph(M / 2 + 1), qh(M / 2 + 1);
    fft_m.forward(pb.data(), ph.data());
    fft_m.forward(qb.data(), qh.data());
    nu = resample(ph, M, N);
    nv = resample(qh, M, N);
    for (std::size_t j = 0; j < nu.size(); ++j) {
      nu[j] *= -I * k[j];
      nv[j] *= -I * k[j];
    }
  }
};

Stepper::Stepper(std::size_t N, double L, StepOptions opts) {
  if (N < 16 || !is_power_of_two(N)) throw ShapeError("Stepper: N must be a power of two >= 16");
  if (!(L > 0.0)) throw DomainError("Stepper: period must be positive");
  impl_ = std::make_unique<Impl>(N, L, opts);
}

Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;


SimState Stepper::step(const SimState& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("step: dt must be positive");
  Impl& m = *impl_;
  if (s.N != m.N || std::abs(s.L - m.L) > 1e-14 * m.L) throw ShapeError("step: state does not match stepper grid");
  const std::size_t n = s.u_hat.size();
  const double Nd = static_cast<double>(m.N);
  // Both means are invariants. Linearizing the products about them moves the
  // stiff part of the u-v coupling into the exactly integrated linear block
  //   d/dt (u_k, v_k) = i k [[k^2 + s - vbar, -ubar], [-ubar, s + g0]] (u_k, v_k),
  // leaving only fluctuation products for the explicit stages.
  const double ubar = s.u_hat[0].real() / Nd;
  const double vbar = s.v_hat[0].real() / Nd;
  auto nonlinear = [&](std::vector<cplx> u, std::vector<cplx> v, std::vector<cplx>& nu,
                       std::vector<cplx>& nv) {
    u[0] = 0.0;
    v[0] = 0.0;
    m.nonlinear(u, v, nu, nv);
  };
  const auto& u = s.u_hat;
  const auto& v = s.v_hat;
  SimState out = s;
  out.t = s.t + dt;

  if (m.opts.scheme == Scheme::IFRK4) {
    std::vector<Block> E(n), E2(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double kk = m.k[j];
      const double a = kk * kk + s.frame_speed - vbar;
      const double d = s.frame_speed + s.v_shift;
      E[j] = block_exp(a, -ubar, d, kk * dt);
      E2[j] = block_exp(a, -ubar, d, 0.5 * kk * dt);
    }
    E[n - 1] = E2[n - 1] = {1.0, 0.0, 1.0};  // Nyquist mode stays at zero
    std::vector<cplx> k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, au(n), av(n);
    nonlinear(u, v, k1u, k1v);
    for (std::size_t j = 0; j < n; ++j) {
      au[j] = u[j] + 0.5 * dt * k1u[j];
      av[j] = v[j] + 0.5 * dt * k1v[j];
      E2[j].apply(au[j], av[j]);
    }
    nonlinear(au, av, k2u, k2v);
    for (std::size_t j = 0; j < n; ++j) {
      au[j] = u[j];
      av[j] = v[j];
      E2[j].apply(au[j], av[j]);
      au[j] += 0.5 * dt * k2u[j];
      av[j] += 0.5 * dt * k2v[j];
    }
    nonlinear(au, av, k3u, k3v);
    for (std::size_t j = 0; j < n; ++j) {
      cplx eu = u[j], ev = v[j], e3u = dt * k3u[j], e3v = dt * k3v[j];
      E[j].apply(eu, ev);
      E2[j].apply(e3u, e3v);
      au[j] = eu + e3u;
      av[j] = ev + e3v;
    }
    nonlinear(au, av, k4u, k4v);
    for (std::size_t j = 0; j < n; ++j) {
      cplx eu = u[j], ev = v[j], e1u = k1u[j], e1v = k1v[j];
      cplx e23u = k2u[j] + k3u[j], e23v = k2v[j] + k3v[j];
      E[j].apply(eu, ev);
      E[j].apply(e1u, e1v);
      E2[j].apply(e23u, e23v);
      out.u_hat[j] = eu + dt * (e1u + 2.0 * e23u + k4u[j]) / 6.0;
      out.v_hat[j] = ev + dt * (e1v + 2.0 * e23v + k4v[j]) / 6.0;
    }
  } else {
    const auto& C = m.etd_coefficients(dt, ubar, vbar, s.frame_speed, s.v_shift);
    std::vector<cplx> nu, nv, nau, nav, nbu, nbv, ncu, ncv, au(n), av(n), bu(n), bv(n), cu(n), cv(n);
    nonlinear(u, v, nu, nv);
    for (std::size_t j = 0; j < n; ++j) {
      cplx eu = u[j], ev = v[j], qu = nu[j], qv = nv[j];
      C[j].e2.apply(eu, ev);
      C[j].q.apply(qu, qv);
      au[j] = eu + qu;
      av[j] = ev + qv;
    }
    nonlinear(au, av, nau, nav);
    for (std::size_t j = 0; j < n; ++j) {
      cplx eu = u[j], ev = v[j], qu = nau[j], qv = nav[j];
      C[j].e2.apply(eu, ev);
      C[j].q.apply(qu, qv);
      bu[j] = eu + qu;
      bv[j] = ev + qv;
    }
    nonlinear(bu, bv, nbu, nbv);
    for (std::size_t j = 0; j < n; ++j) {
      cplx eu = au[j], ev = av[j], qu = 2.0 * nbu[j] - nu[j], qv = 2.0 * nbv[j] - nv[j];
      C[j].e2.apply(eu, ev);
      C[j].q.apply(qu, qv);
      cu[j] = eu + qu;
      cv[j] = ev + qv;
    }
    nonlinear(cu, cv, ncu, ncv);
    for (std::size_t j = 0; j < n; ++j) {
      cplx eu = u[j], ev = v[j];
      cplx a1u = nu[j], a1v = nv[j];
      cplx a2u = nau[j] + nbu[j], a2v = nav[j] + nbv[j];
      cplx a3u = ncu[j], a3v = ncv[j];
      C[j].e.apply(eu, ev);
      C[j].f1.apply(a1u, a1v);
      C[j].f2.apply(a2u, a2v);
      C[j].f3.apply(a3u, a3v);
      out.u_hat[j] = eu + a1u + 2.0 * a2u + a3u;
      out.v_hat[j] = ev + a1v + 2.0 * a2v + a3v;
    }
  }

  const double limit = kBlowUp * Nd;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = std::abs(out.u_hat[j]), y = std::abs(out.v_hat[j]);
    if (!std::isfinite(x) || !std::isfinite(y) || x > limit || y > limit) {
      std::ostringstream msg;
      msg << "blow-up between t = " << s.t << " and t = " << out.t;
      throw BlowUpError(msg.str(), s.t);
    }
  }
  out.u_hat[0] = cplx(out.u_hat[0].real(), 0.0);
  out.v_hat[0] = cplx(out.v_hat[0].real(), 0.0);
  out.u_hat[n - 1] = 0.0;
  out.v_hat[n - 1] = 0.0;
  return out;
}

SimState step(const SimState& s, double dt, StepOptions opts) {
  Stepper st(s.N, s.L, opts);
  return st.step(s, dt);
}

// ---------------------------------------------------------------------------

ConservedQuantities state_invariants(const SimState& s) {
  const std::size_t M = 2 * s.N;
  const auto k = half_wavenumbers(s.N, s.L);
  auto ux = s.u_hat;
  for (std::size_t j = 0; j < ux.size(); ++j) ux[j] *= I * k[j];
  RealFft fft(M);
  const auto u = fft.inverse(resample(s.u_hat, s.N, M));
  auto v = fft.inverse(resample(s.v_hat, s.N, M));
  const auto d = fft.inverse(resample(ux, s.N, M));
  for (auto& x : v) x += s.v_shift;
  ConservedQuantities q{0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < M; ++j) {
    q.m_u += u[j];
    q.m_v += v[j];
    q.e_mixed += d[j] * d[j] - u[j] * u[j] * v[j];
    q.l2 += u[j] * u[j] + v[j] * v[j];
  }
  const double h = s.L / static_cast<double>(M);
  q.m_u *= h;
  q.m_v *= h;
  q.e_mixed *= h;
  q.l2 *= h;
  return q;
}

double Trajectory::max_drift() const {
  return *std::max_element(max_rel_drift.begin(), max_rel_drift.end());
}

Trajectory simulate_state(SimState s, double T, double dt, const SimulateOptions& opts,
                          Trajectory* partial) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("simulate: T must be non-negative");
  if (!(dt > 0.0)) throw DomainError("simulate: dt must be positive");
  const auto steps = static_cast<long long>(std::ceil(T / dt - 1e-9));
  const double h = steps > 0 ? T / static_cast<double>(steps) : dt;
  long long sample_every = steps > 0 ? steps : 1;
  if (opts.sample_interval > 0.0)
    sample_every = std::max<long long>(1, std::llround(opts.sample_interval / h));

  Trajectory tr;
  const ConservedQuantities q0 = state_invariants(s);
  const double scale = std::max(q0.l2, 1e-300);
  auto record = [&](const SimState& st) {
    const ConservedQuantities q = state_invariants(st);
    tr.log.push_back({st.t, q});
    const double d[4] = {q.m_u - q0.m_u, q.m_v - q0.m_v, q.e_mixed - q0.e_mixed, q.l2 - q0.l2};
    const double r[4] = {q0.m_u, q0.m_v, q0.e_mixed, q0.l2};
    for (int i = 0; i < 4; ++i)
      tr.max_rel_drift[i] = std::max(tr.max_rel_drift[i], std::abs(d[i]) / std::max(std::abs(r[i]), scale));
    if (opts.keep_states) tr.states.push_back(st);
  };
  record(s);
  Stepper stepper(s.N, s.L, opts.step);
  const double t0 = s.t;
  for (long long n = 1; n <= steps; ++n) {
    try {
      s = stepper.step(s, h);
    } catch (const BlowUpError&) {
      if (partial) *partial = tr;
      throw;
    }
    s.t = t0 + static_cast<double>(n) * h;
    if (n % sample_every == 0 || n == steps) record(s);
  }
  return tr;
}

Trajectory simulate(const GridFunction& u0, const GridFunction& v0, double T, double dt,
                    double frame_speed, const SimulateOptions& opts, Trajectory* partial) {
  return simulate_state(make_state(u0, v0, frame_speed), T, dt, opts, partial);
}

// ---------------------------------------------------------------------------

double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size() || t.size() < 2) throw ShapeError("fit_log_slope: need at least two samples");
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double n = static_cast<double>(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0)) throw NumericalFailure("fit_log_slope: non-positive sample");
    const double ly = std::log(y[i]);
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

GrowthFit growth_rate_with_seed(const WaveParams& p, const std::vector<double>& U,
                                const std::vector<double>& V, double lambda_ref, double eps,
                                double T, const GrowthOptions& opts) {
  if (!(eps >= 1e-8 && eps <= 1e-3)) throw DomainError("growth experiment: eps must lie in [1e-8, 1e-3]");
  if (!(T > 0.0)) throw DomainError("growth experiment: T must be positive");
  const std::size_t N = opts.N;
  if (U.size() != N || V.size() != N) throw ShapeError("growth experiment: seed has the wrong size");
  const GridFunction psi = sample_psi(p, N);
  const GridFunction phi = sample_phi(p, N);
  double norm = 0.0;
  for (std::size_t j = 0; j < N; ++j) norm += U[j] * U[j] + V[j] * V[j];
  norm = std::sqrt(norm * p.L / static_cast<double>(N));
  if (!(norm > 0.0)) throw DomainError("growth experiment: seed is zero");
  GridFunction u0 = psi, v0 = phi;
  for (std::size_t j = 0; j < N; ++j) {
    u0.samples[j] += eps * U[j] / norm;
    v0.samples[j] += eps * V[j] / norm;
  }

  GrowthFit fit{};
  fit.lambda_lin = lambda_ref;
  // The stepper drops the Nyquist mode, so deviations are measured against
  // the equally truncated wave.
  const LabFields base = frame_fields(make_state(psi, phi, p.c));
  auto deviation = [&](const SimState& s) {
    const LabFields f = frame_fields(s);
    double d = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const double a = f.u.samples[j] - base.u.samples[j];
      const double b = f.v.samples[j] - base.v.samples[j];
      d += a * a + b * b;
    }
    return std::sqrt(d * p.L / static_cast<double>(N));
  };

  SimState s = make_state(u0, v0, p.c);
  fit.initial_deviation = deviation(s);
  Stepper stepper(N, p.L);
  const auto steps = static_cast<long long>(std::ceil(T / opts.dt - 1e-9));
  const double h = T / static_cast<double>(steps);
  const long long every = std::max<long long>(1, steps / 200);
  fit.times.push_back(0.0);
  fit.deviations.push_back(fit.initial_deviation);
  double t_exit = -1.0;
  for (long long n = 1; n <= steps; ++n) {
    s = stepper.step(s, h);
    if (n % every != 0 && n != steps) continue;
    const double d = deviation(s);
    if (d > opts.linear_limit) {
      t_exit = s.t;
      break;
    }
    fit.times.push_back(s.t);
    fit.deviations.push_back(d);
  }
  if (t_exit >= 0.0 && t_exit < 0.5 * T) {
    std::ostringstream msg;
    msg << "deviation left the linear regime at t = " << t_exit << " (< T/2 = " << 0.5 * T << ")";
    throw WindowTooShortError(msg.str());
  }
  fit.lambda_fit = fit_log_slope(fit.times, fit.deviations);
  fit.rel_err = std::abs(fit.lambda_fit - fit.lambda_lin) / std::abs(fit.lambda_lin);
  return fit;
}

GrowthFit growth_rate_experiment(const WaveParams& p, double eps, double T, const GrowthOptions& opts) {
  if (!(eps >= 1e-8 && eps <= 1e-3)) throw DomainError("growth experiment: eps must lie in [1e-8, 1e-3]");
  const LeadingMode mode = leading_mode(p, opts.N);
  const double tol = std::max(mode.snap_tol, 1e-6);
  if (!(mode.lambda.real() > tol) || std::abs(mode.lambda.imag()) > tol) {
    std::ostringstream msg;
    msg << "no real unstable eigenvalue: the leading eigenvalue of d_xi H is " << mode.lambda.real()
        << (mode.lambda.imag() < 0 ? " - " : " + ") << std::abs(mode.lambda.imag())
        << "i (tolerance " << tol << ")";
    throw NoUnstableModeError(msg.str());
  }
  return growth_rate_with_seed(p, mode.U, mode.V, mode.lambda.real(), eps, T, opts);
}

}  // namespace dsw
