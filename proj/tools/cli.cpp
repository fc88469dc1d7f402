#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dsw/errors.hpp"
#include "dsw/evolution.hpp"
#include "dsw/hill_floquet.hpp"
#include "dsw/index_engine.hpp"
#include "dsw/normal_form.hpp"
#include "dsw/operator_spectra.hpp"
#include "dsw/wave_family.hpp"

namespace dsw::cli {

namespace {

constexpr const char* kVersion = "dswlab 1.0";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Output sink: the file named by --out, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

void header(std::ostream& os, const std::string& command, const std::vector<std::pair<std::string, std::string>>& kv) {
  os << "# " << kVersion << ' ' << command << '\n';
  for (const auto& [k, v] : kv) os << "# " << k << '=' << v << '\n';
}

void params_header(std::ostream& os, const WaveParams& p) {
  os << "# L=" << fmt(p.L) << "\n# kappa=" << fmt(p.kappa.value()) << "\n# c=" << fmt(p.c)
     << "\n# h=" << fmt(p.h) << "\n# eta1=" << fmt(p.eta1) << "\n# eta3=" << fmt(p.eta3)
     << "\n# eta4=" << fmt(p.eta4) << "\n# beta_sq=" << fmt(p.beta_sq) << "\n# F1=" << fmt(p.F1)
     << "\n# a=" << fmt(p.a) << "\n# alpha=" << fmt(p.alpha) << "\n# K=" << fmt(p.K) << '\n';
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw UsageError(std::string(name) + " must be positive and finite");
}

void require_grid(std::size_t N, std::size_t min_n, const char* name) {
  if (N < min_n || !is_power_of_two(N))
    throw UsageError(std::string(name) + " must be a power of two >= " + std::to_string(min_n));
}

WaveParams wave_from(double L, const std::optional<double>& kappa, const std::optional<double>& c) {
  require_positive(L, "--L");
  if (kappa && c) throw UsageError("give only one of --kappa and --c");
  if (kappa) {
    if (!(*kappa > 0.0)) throw UsageError("--kappa must lie in (0, 1)");
    return params_from_kappa(L, Modulus(*kappa));
  }
  if (c) return params_from_kappa(L, kappa_from_c(L, *c));
  throw UsageError("one of --kappa or --c is required");
}

// ---------------------------------------------------------------------------

struct WaveCfg {
  double L = 0.0;
  std::optional<double> kappa, c;
  std::size_t N = 256;
  std::string out;
};

void cmd_wave(const WaveCfg& cfg, std::ostream& fallback) {
  require_grid(cfg.N, 64, "--N");
  const WaveParams p = wave_from(cfg.L, cfg.kappa, cfg.c);
  const ProfileResidual r = profile_residual(p, cfg.N);
  const GridFunction psi = sample_psi(p, cfg.N);
  const GridFunction phi = sample_phi(p, cfg.N);
  Sink sink(cfg.out, fallback);
  std::ostream& os = *sink;
  header(os, "wave", {{"N", std::to_string(cfg.N)}});
  params_header(os, p);
  os << "# residual_r1=" << fmt(r.r1) << "\n# residual_r2=" << fmt(r.r2) << '\n';
  os << "xi,psi,phi\n";
  for (std::size_t j = 0; j < cfg.N; ++j)
    os << fmt(psi.x(j)) << ',' << fmt(psi.samples[j]) << ',' << fmt(phi.samples[j]) << '\n';
}

// ---------------------------------------------------------------------------

struct ThetaCfg {
  std::optional<std::string> pairs;
  double tol = 1e-12;
  unsigned threads = 0;
  std::string out;
};

bool cmd_theta_table(const ThetaCfg& cfg, std::ostream& fallback) {
  const auto pairs = cfg.pairs ? parse_pairs(*cfg.pairs) : default_theta_pairs();
  std::atomic<bool> failed{false};
  const auto rows = parallel_rows(pairs.size(), cfg.threads, [&](std::size_t i) {
    const auto [L, kappa] = pairs[i];
    std::ostringstream row;
    try {
      const WaveParams p = params_from_kappa(L, Modulus(kappa));
      const HillSolution h = integrate_hill_ivp(p, cfg.tol);
      std::string nm = "", nz = "";
      try {
        const InertialIndex ix = inertial_index_from_theta(h);
        nm = std::to_string(ix.n_minus);
        nz = std::to_string(ix.n_zero);
      } catch (const DegenerateThetaError&) {
        nm = nz = "degenerate";
      }
      row << fmt(L) << ',' << fmt(kappa) << ',' << fmt(p.c) << ',' << fmt(h.p_prime_0) << ','
          << fmt(h.q_prime_final) << ',' << fmt(h.theta) << ',' << nm << ',' << nz << '\n';
    } catch (const std::exception& e) {
      failed = true;
      row << "# row L=" << fmt(L) << " kappa=" << fmt(kappa) << " failed: " << e.what() << '\n';
    }
    return row.str();
  });
  Sink sink(cfg.out, fallback);
  std::ostream& os = *sink;
  header(os, "theta-table", {{"tol", fmt(cfg.tol)}, {"rows", std::to_string(pairs.size())}});
  os << "L,kappa,c,p_prime_0,q_prime_L,theta,n_minus,n_zero\n";
  for (const auto& r : rows) os << r;
  return !failed;
}

// ---------------------------------------------------------------------------

struct SweepCfg {
  double L = 1.0;
  double kmin = 0.05, kmax = 0.95, kstep = 0.05;
  std::optional<double> kappa;
  std::optional<int> n_H;
  unsigned threads = 0;
  std::string out;
};

bool cmd_dmatrix_sweep(const SweepCfg& cfg, std::ostream& fallback) {
  require_positive(cfg.L, "--L");
  std::vector<double> kappas;
  if (cfg.kappa) {
    kappas.push_back(*cfg.kappa);
  } else {
    require_positive(cfg.kstep, "--kappa-step");
    const auto n = static_cast<long>(std::floor((cfg.kmax - cfg.kmin) / cfg.kstep + 1e-9));
    for (long i = 0; i <= n; ++i) kappas.push_back(cfg.kmin + static_cast<double>(i) * cfg.kstep);
  }
  for (double k : kappas)
    if (!(k > 0.0 && k < 1.0)) throw UsageError("kappa values must lie in (0, 1)");

  std::atomic<bool> failed{false};
  const auto rows = parallel_rows(kappas.size(), cfg.threads, [&](std::size_t i) {
    const double kappa = kappas[i];
    std::ostringstream row;
    try {
      const WaveParams p = params_from_kappa(cfg.L, Modulus(kappa));
      const DScalars s = dmatrix_scalars(p);
      int n_H = 0;
      if (cfg.n_H) {
        n_H = *cfg.n_H;
      } else {
        n_H = inertial_index_from_theta(integrate_hill_ivp(p)).n_minus;
      }
      std::optional<DMatrix> d;
      try {
        d = dmatrix_from_scalars(p, s);
      } catch (const DegenerateMatrixError&) {
        // Not fatal: the row is kept and flagged.
      }
      row << fmt(kappa) << ',';
      if (d) {
        const auto& e = d->entries;
        const HamiltonianIndex hi = hamiltonian_index(*d, n_H);
        row << fmt(e[0][0]) << ',' << fmt(e[0][1]) << ',' << fmt(e[0][2]) << ',' << fmt(e[1][1]) << ','
            << fmt(e[1][2]) << ',' << fmt(e[2][2]) << ',' << fmt(d->det) << ',' << fmt(d->eigenvalues[0]) << ','
            << fmt(d->eigenvalues[1]) << ',' << fmt(d->eigenvalues[2]) << ',' << hi.n_D << ',' << n_H << ','
            << hi.k_ham;
      } else {
        row << ",,,,,,,,,,," << n_H << ',';
      }
      const AIntegrals& A = s.A;
      row << ',' << fmt(A.A1) << ',' << fmt(A.A2) << ',' << fmt(A.A3) << ',' << fmt(A.A4) << ','
          << fmt(A.A5) << ',' << fmt(A.A6) << ',' << (d ? "ok" : "degenerate") << '\n';
    } catch (const std::exception& e) {
      failed = true;
      row << "# row kappa=" << fmt(kappa) << " failed: " << e.what() << '\n';
    }
    return row.str();
  });
  Sink sink(cfg.out, fallback);
  std::ostream& os = *sink;
  header(os, "dmatrix-sweep",
         {{"L", fmt(cfg.L)}, {"n_H", cfg.n_H ? std::to_string(*cfg.n_H) : "from theta"}});
  os << "kappa,D11,D12,D13,D22,D23,D33,det,eig1,eig2,eig3,n_D,n_H,k_ham,A1,A2,A3,A4,A5,A6,flag\n";
  for (const auto& r : rows) os << r;
  return !failed;
}

// ---------------------------------------------------------------------------

struct SpectrumCfg {
  double L = 0.0;
  std::optional<double> kappa, c;
  std::size_t N = 256;
  std::string out;
};

void cmd_spectrum(const SpectrumCfg& cfg, std::ostream& fallback) {
  require_grid(cfg.N, 256, "--N");
  const WaveParams p = wave_from(cfg.L, cfg.kappa, cfg.c);
  const SpectrumReport r = unstable_modes(p, cfg.N);
  const DMatrix d = assemble_dmatrix(p);
  const CountIdentity ci = count_identity(r, d, r.n_H);
  Sink sink(cfg.out, fallback);
  std::ostream& os = *sink;
  header(os, "spectrum", {{"N", std::to_string(cfg.N)}});
  params_header(os, p);
  os << "# zero_cluster_size=" << r.zero_cluster_size << "\n# zero_cluster_radius=" << fmt(r.zero_cluster_radius)
     << "\n# snap_tol=" << fmt(r.snap_tol) << '\n';
  os << "re,im,class,krein,symmetry_residual\n";
  for (const auto& e : r.eigenvalues)
    os << fmt(e.lambda.real()) << ',' << fmt(e.lambda.imag()) << ',' << to_string(e.cls) << ','
       << e.krein_sign << ',' << fmt(e.symmetry_residual) << '\n';
  os << "# summary k_r=" << r.k_r << " k_c=" << r.k_c << " k_i_minus=" << r.krein_negative
     << " k_ham_spectral=" << r.k_ham_spectral() << " n_Lplus=" << r.n_Lplus << " n_H=" << r.n_H
     << " n_D=" << d.n_negative << " count_identity=" << (ci.holds ? "holds" : "fails") << " (" << ci.lhs
     << " vs " << ci.rhs << ")"
     << " max_real_part=" << fmt(r.max_real_part) << " max_symmetry_residual=" << fmt(r.max_symmetry_residual)
     << '\n';
}

// ---------------------------------------------------------------------------

struct SimCfg {
  bool wave = false, zero = false;
  std::optional<unsigned long> random_seed;
  double L = 0.0;
  std::optional<double> kappa, c;
  std::size_t N = 256;
  double T = 1.0, dt = 1e-3, sample = 0.0;
  std::optional<double> perturb;
  bool no_dealias = false;
  std::string scheme = "etdrk4";
  std::string out, trajectory;
};

bool cmd_simulate(const SimCfg& cfg, std::ostream& fallback, std::ostream& err) {
  const int modes = int(cfg.wave) + int(cfg.zero) + int(cfg.random_seed.has_value());
  if (modes != 1) throw UsageError("choose exactly one of --wave, --zero, --random");
  require_grid(cfg.N, 16, "--N");
  require_positive(cfg.T, "--T");
  require_positive(cfg.dt, "--dt");
  if (cfg.perturb && !cfg.wave) throw UsageError("--perturb needs --wave");

  Sink sink(cfg.out, fallback);
  std::ostream& os = *sink;

  if (cfg.perturb) {
    const WaveParams p = wave_from(cfg.L, cfg.kappa, cfg.c);
    GrowthOptions go;
    go.N = cfg.N;
    go.dt = cfg.dt;
    const GrowthFit g = growth_rate_experiment(p, *cfg.perturb, cfg.T, go);
    header(os, "simulate", {{"mode", "growth"}, {"eps", fmt(*cfg.perturb)}, {"N", std::to_string(cfg.N)},
                            {"dt", fmt(cfg.dt)}, {"T", fmt(cfg.T)}});
    params_header(os, p);
    os << "t,deviation\n";
    for (std::size_t i = 0; i < g.times.size(); ++i) os << fmt(g.times[i]) << ',' << fmt(g.deviations[i]) << '\n';
    os << "# lambda_fit=" << fmt(g.lambda_fit) << "\n# lambda_lin=" << fmt(g.lambda_lin)
       << "\n# rel_err=" << fmt(g.rel_err) << '\n';
    return true;
  }

  GridFunction u0, v0;
  double frame_speed = 0.0;
  std::string mode;
  std::optional<WaveParams> wp;
  if (cfg.wave) {
    wp = wave_from(cfg.L, cfg.kappa, cfg.c);
    u0 = sample_psi(*wp, cfg.N);
    v0 = sample_phi(*wp, cfg.N);
    frame_speed = wp->c;
    mode = "wave";
  } else {
    require_positive(cfg.L, "--L");
    if (cfg.zero) {
      u0 = GridFunction(cfg.L, std::vector<double>(cfg.N, 0.0));
      v0 = u0;
      mode = "zero";
    } else {
      const auto f = smooth_random_fields(cfg.N, cfg.L, *cfg.random_seed);
      u0 = f.first;
      v0 = f.second;
      mode = "random seed " + std::to_string(*cfg.random_seed);
    }
  }
  SimulateOptions so;
  so.step.dealias = !cfg.no_dealias;
  if (cfg.scheme == "etdrk4") {
    so.step.scheme = Scheme::ETDRK4;
  } else if (cfg.scheme == "ifrk4") {
    so.step.scheme = Scheme::IFRK4;
  } else {
    throw UsageError("--scheme must be etdrk4 or ifrk4");
  }
  so.sample_interval = cfg.sample;
  so.keep_states = !cfg.trajectory.empty();

  Trajectory tr;
  bool ok = true;
  try {
    tr = simulate(u0, v0, cfg.T, cfg.dt, frame_speed, so, &tr);
  } catch (const BlowUpError& e) {
    err << "dswlab: blow-up: " << e.what() << " (last finite time " << fmt(e.last_finite_time()) << ")\n";
    ok = false;
  }

  header(os, "simulate", {{"mode", mode}, {"N", std::to_string(cfg.N)}, {"L", fmt(u0.L)}, {"T", fmt(cfg.T)},
                          {"dt", fmt(cfg.dt)}, {"frame_speed", fmt(frame_speed)}, {"scheme", cfg.scheme},
                          {"dealias", cfg.no_dealias ? "off" : "on"}});
  if (wp) params_header(os, *wp);
  os << "# drift_m_u=" << fmt(tr.max_rel_drift[0]) << "\n# drift_m_v=" << fmt(tr.max_rel_drift[1])
     << "\n# drift_e_mixed=" << fmt(tr.max_rel_drift[2]) << "\n# drift_l2=" << fmt(tr.max_rel_drift[3]) << '\n';
  os << "t,m_u,m_v,e_mixed,l2\n";
  for (const auto& r : tr.log)
    os << fmt(r.t) << ',' << fmt(r.q.m_u) << ',' << fmt(r.q.m_v) << ',' << fmt(r.q.e_mixed) << ',' << fmt(r.q.l2)
       << '\n';

  if (!cfg.trajectory.empty()) {
    std::ofstream tf(cfg.trajectory);
    if (!tf) throw UsageError("cannot open trajectory file " + cfg.trajectory);
    tf << "# " << kVersion << " simulate trajectory (frame speed " << fmt(frame_speed) << ")\n";
    tf << "t,x,u,v\n";
    for (const auto& s : tr.states) {
      const LabFields f = frame_fields(s);
      for (std::size_t j = 0; j < s.N; ++j)
        tf << fmt(s.t) << ',' << fmt(f.u.x(j)) << ',' << fmt(f.u.samples[j]) << ',' << fmt(f.v.samples[j]) << '\n';
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------

struct NormalFormCfg {
  int trials = 50;
  int support = 32;
  int kmax = 16;
  unsigned long seed = 1;
  double tol = 1e-13;
  std::string out;
};

bool cmd_normalform_check(const NormalFormCfg& cfg, std::ostream& fallback) {
  if (cfg.trials < 0) throw UsageError("--trials must be non-negative");
  if (cfg.support < 1 || cfg.kmax < 1) throw UsageError("--support and --kmax must be positive");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> ksel(-cfg.kmax, cfg.kmax);
  std::uniform_int_distribution<int> nsel(1, cfg.support);
  std::normal_distribution<double> gauss;
  Sink sink(cfg.out, fallback);
  std::ostream& os = *sink;
  header(os, "normalform-check", {{"trials", std::to_string(cfg.trials)}, {"support", std::to_string(cfg.support)},
                                  {"kmax", std::to_string(cfg.kmax)}, {"seed", std::to_string(cfg.seed)},
                                  {"tol", fmt(cfg.tol)}});
  for (int k2 : {8, 16, 32, 64}) os << "# smoothing k1=1 k2=" << k2 << " q=" << fmt(smoothing_quotient(1, k2)) << '\n';
  os << "trial,terms_f,terms_g,residual,pass\n";
  bool all = true;
  for (int t = 0; t < cfg.trials; ++t) {
    ExpPath f, g;
    const int nf = nsel(rng), ng = nsel(rng);
    for (int j = 0; j < nf; ++j) f.terms.push_back({ksel(rng), {gauss(rng), gauss(rng)}, 10.0 * gauss(rng)});
    for (int j = 0; j < ng; ++j) {
      int k = 0;
      while (k == 0) k = ksel(rng);
      g.terms.push_back({k, {gauss(rng), gauss(rng)}, 10.0 * gauss(rng)});
    }
    const double r = verify_identity(f, g, 0.5);
    const bool pass = r < cfg.tol;
    all = all && pass;
    os << t << ',' << nf << ',' << ng << ',' << fmt(r) << ',' << (pass ? 1 : 0) << '\n';
  }
  return all;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const std::vector<std::pair<double, double>>& default_theta_pairs() {
  static const std::vector<std::pair<double, double>> pairs = {
      {2, 0.1}, {2, 0.2}, {2, 0.3}, {3, 0.1}, {3, 0.2}, {3, 0.3},  {4, 0.1},  {4, 0.2},
      {4, 0.3}, {4, 0.5}, {4, 0.7}, {10, 0.1}, {10, 0.2}, {10, 0.4}, {50, 0.1}};
  return pairs;
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& s) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("pair '" + item + "' is not of the form L:kappa");
    double L = 0.0, k = 0.0;
    const auto r1 = std::from_chars(item.data(), item.data() + colon, L);
    const auto r2 = std::from_chars(item.data() + colon + 1, item.data() + item.size(), k);
    if (r1.ec != std::errc() || r1.ptr != item.data() + colon || r2.ec != std::errc() ||
        r2.ptr != item.data() + item.size())
      throw UsageError("pair '" + item + "' is not numeric");
    out.emplace_back(L, k);
  }
  return out;
}

std::vector<std::string> parallel_rows(std::size_t n, unsigned threads,
                                       const std::function<std::string(std::size_t)>& fn) {
  std::vector<std::string> rows(n);
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) rows[i] = fn(i);
  };
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return rows;
}

std::pair<GridFunction, GridFunction> smooth_random_fields(std::size_t N, double L, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<double> u(N, 0.0), v(N, 0.0);
  for (auto* f : {&u, &v})
    for (int k = 1; k <= 4; ++k) {
      const double a = gauss(rng) / (k * k), b = gauss(rng) / (k * k);
      for (std::size_t j = 0; j < N; ++j) {
        const double th = 2.0 * std::numbers::pi * k * static_cast<double>(j) / static_cast<double>(N);
        (*f)[j] += a * std::cos(th) + b * std::sin(th);
      }
    }
  double norm = 0.0;
  for (std::size_t j = 0; j < N; ++j) norm += u[j] * u[j] + v[j] * v[j];
  norm = std::sqrt(norm * L / static_cast<double>(N));
  for (std::size_t j = 0; j < N; ++j) {
    u[j] /= norm;
    v[j] /= norm;
  }
  return {GridFunction(L, std::move(u)), GridFunction(L, std::move(v))};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Periodic traveling waves of the Drinfeld-Sokolov-Wilson system"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  WaveCfg wave;
  auto* w = app.add_subcommand("wave", "traveling-wave profile (xi, psi, phi)");
  w->add_option("--L", wave.L, "period")->required();
  w->add_option("--kappa", wave.kappa, "elliptic modulus in (0, 1)");
  w->add_option("--c", wave.c, "wave speed (above 4 pi^2 / L^2)");
  w->add_option("--N", wave.N, "grid points")->capture_default_str();
  w->add_option("--out", wave.out, "output file (default stdout)");

  ThetaCfg theta;
  auto* th = app.add_subcommand("theta-table", "Hill IVP theta for a list of (L, kappa)");
  th->add_option("--pairs", theta.pairs, "L:kappa,L:kappa,... (default: the reference rows)");
  th->add_option("--tol", theta.tol, "integrator tolerance")->capture_default_str();
  th->add_option("--threads", theta.threads, "worker threads (0: all cores)");
  th->add_option("--out", theta.out, "output file (default stdout)");

  SweepCfg sweep;
  auto* ds = app.add_subcommand("dmatrix-sweep", "D matrix, index and A integrals across kappa");
  ds->add_option("--L", sweep.L, "period")->capture_default_str();
  ds->add_option("--kappa-min", sweep.kmin)->capture_default_str();
  ds->add_option("--kappa-max", sweep.kmax)->capture_default_str();
  ds->add_option("--kappa-step", sweep.kstep)->capture_default_str();
  ds->add_option("--kappa", sweep.kappa, "single kappa instead of a range");
  ds->add_option("--n-H", sweep.n_H, "Morse index of H (default: from theta)");
  ds->add_option("--threads", sweep.threads, "worker threads (0: all cores)");
  ds->add_option("--out", sweep.out, "output file (default stdout)");

  SpectrumCfg spec;
  auto* sp = app.add_subcommand("spectrum", "eigenvalues of the linearized operator");
  sp->add_option("--L", spec.L, "period")->required();
  sp->add_option("--kappa", spec.kappa, "elliptic modulus");
  sp->add_option("--c", spec.c, "wave speed");
  sp->add_option("--N", spec.N, "grid points")->capture_default_str();
  sp->add_option("--out", spec.out, "output file (default stdout)");

  SimCfg sim;
  auto* si = app.add_subcommand("simulate", "pseudospectral evolution with conservation log");
  si->add_flag("--wave", sim.wave, "start from the traveling wave, in its co-moving frame");
  si->add_flag("--zero", sim.zero, "start from zero data");
  si->add_option("--random", sim.random_seed, "smooth unit-norm random data with this seed");
  si->add_option("--L", sim.L, "period");
  si->add_option("--kappa", sim.kappa, "elliptic modulus (with --wave)");
  si->add_option("--c", sim.c, "wave speed (with --wave)");
  si->add_option("--N", sim.N, "grid points")->capture_default_str();
  si->add_option("--T", sim.T, "final time")->capture_default_str();
  si->add_option("--dt", sim.dt, "time step")->capture_default_str();
  si->add_option("--sample", sim.sample, "sampling interval of the log (0: endpoints only)");
  si->add_option("--perturb", sim.perturb, "growth-rate experiment with this seed amplitude");
  si->add_flag("--no-dealias", sim.no_dealias, "disable dealiasing of the products");
  si->add_option("--scheme", sim.scheme, "etdrk4 or ifrk4")->capture_default_str();
  si->add_option("--trajectory", sim.trajectory, "write (t, x, u, v) samples here");
  si->add_option("--out", sim.out, "conservation log file (default stdout)");

  NormalFormCfg nf;
  auto* nc = app.add_subcommand("normalform-check", "normal-form identity on random trigonometric data");
  nc->add_option("--trials", nf.trials)->capture_default_str();
  nc->add_option("--support", nf.support, "maximal number of terms per input")->capture_default_str();
  nc->add_option("--kmax", nf.kmax, "largest |k| of a term")->capture_default_str();
  nc->add_option("--seed", nf.seed)->capture_default_str();
  nc->add_option("--tol", nf.tol, "residual threshold")->capture_default_str();
  nc->add_option("--out", nf.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    bool ok = true;
    if (*w) {
      cmd_wave(wave, out);
    } else if (*th) {
      ok = cmd_theta_table(theta, out);
    } else if (*ds) {
      ok = cmd_dmatrix_sweep(sweep, out);
    } else if (*sp) {
      cmd_spectrum(spec, out);
    } else if (*si) {
      ok = cmd_simulate(sim, out, err);
    } else if (*nc) {
      ok = cmd_normalform_check(nf, out);
    }
    return ok ? 0 : 1;
  } catch (const UsageError& e) {
    err << "dswlab: usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "dswlab: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dsw::cli
