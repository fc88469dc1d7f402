#include "dsw/index_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dsw/errors.hpp"
#include "dsw/quadrature.hpp"

namespace dsw {

namespace {

struct Jac {
  double sn, cn, dn, w;
};

Jac jac(const WaveParams& p, double y) {
  const auto j = jacobi_sn_cn_dn(y, p.kappa, p.K);
  return {j.sn, j.cn, j.dn, 1.0 + p.beta_sq * j.sn * j.sn};
}

// 3 kb + 5 beta^2 dn^2, the bracket shared by A2, A3, A6.
double bracket(const WaveParams& p, const Jac& j) {
  return 3.0 * p.kb() + 5.0 * p.beta_sq * j.dn * j.dn;
}

}  // namespace

AIntegrals a_integrals(const WaveParams& p, double tol) {
  auto over_K = [&](auto&& integrand) {
    return integrate([&](double y) { return integrand(jac(p, y)); }, 0.0, p.K, tol).value;
  };
  AIntegrals A{};
  A.A1 = over_K([&](const Jac& j) {
    return j.w * j.w * (1.0 - 2.0 * j.sn * j.sn) / (j.dn * j.dn);
  });
  A.A2 = over_K([&](const Jac& j) {
    return j.w * j.w * j.w * bracket(p, j) * (1.0 - 2.0 * j.sn * j.sn) / std::pow(j.dn, 4);
  });
  A.A3 = over_K([&](const Jac& j) {
    return j.w * j.w * bracket(p, j) * (1.0 - 2.0 * j.sn * j.sn) / (j.dn * j.dn);
  });
  A.A4 = over_K([&](const Jac& j) { return j.w * (1.0 - 2.0 * j.sn * j.sn); });
  A.A5 = A.A2;
  A.A6 = over_K([&](const Jac& j) { return j.w * bracket(p, j) * (1.0 - 2.0 * j.sn * j.sn); });
  return A;
}

double psi_power_integral(const WaveParams& p, int n, double tol) {
  if (n < 1 || n > 4) throw DomainError("psi_power_integral: n must be in 1..4");
  const double inner = integrate(
      [&](double y) {
        const Jac j = jac(p, y);
        return std::pow(j.dn * j.dn / j.w, n);
      },
      0.0, p.K, tol).value;
  return std::pow(p.eta4, n) * p.L / p.K * inner;
}

// ---------------------------------------------------------------------------
// VarphiTable

VarphiTable::Local VarphiTable::local(double y) const {
  const Jac j = jac(params_, y);
  const double bs = params_.beta_sq;
  const double k2 = params_.kappa_sq();
  const double s = j.sn, c = j.cn, d = j.dn, w = j.w;
  const double one2 = 1.0 - 2.0 * s * s;
  Local l{};
  l.B = w * w * one2 / (d * d);
  l.dB = 4.0 * bs * w * s * c * one2 / d - 4.0 * w * w * s * c / d +
         2.0 * k2 * w * w * one2 * s * c / (d * d * d);
  l.S = s * c * d / (w * w);
  l.dS = (c * c * d * d - s * s * d * d - k2 * s * s * c * c) / (w * w) -
         4.0 * bs * s * s * c * c * d * d / (w * w * w);
  l.G = w * w * w * (3.0 * params_.kb() + 5.0 * bs * d * d) * one2 / (d * d * d * d);
  return l;
}

double VarphiTable::G(double y) const { return local(y).G; }

VarphiTable::VarphiTable(const WaveParams& p, std::size_t N) : params_(p), n_(N) {
  if (N < 1024 || !is_power_of_two(N)) throw ShapeError("build_varphi: N must be a power of two >= 1024");
  const double alpha = p.alpha;
  C0_ = 1.0 / (2.0 * alpha * alpha * p.eta4 * p.kb());
  A2_ = integrate([this](double y) { return G(y); }, 0.0, p.K, 1e-13).value;
  const double b = 1.0 + p.beta_sq;
  half_prime_ = p.L * (1.0 - p.kappa_sq()) * A2_ / (4.0 * p.K * p.eta4 * p.kb() * b * b);

  const GaussRule& gr = gauss_legendre(kCellOrder);
  const double hy = 2.0 * p.K / static_cast<double>(N);
  J_.assign(N + 1, 0.0);
  phi_.assign(N + 1, 0.0);
  dphi_.assign(N + 1, 0.0);
  phi_nodes_.assign(N * kCellOrder, 0.0);
  dpsi_nodes_.assign(N * kCellOrder, 0.0);

  for (std::size_t j = 0; j < N; ++j) {
    const double y0 = hy * static_cast<double>(j);
    double cell = 0.0;
    for (int i = 0; i < kCellOrder; ++i) {
      const double yi = y0 + 0.5 * hy * (1.0 + gr.nodes[i]);
      const Local li = local(yi);
      cell += 0.5 * hy * gr.weights[i] * li.G;
      // J at the node: a second Gauss rule on [y0, yi].
      const double sub = yi - y0;
      double Ji = 0.0;
      for (int m = 0; m < kCellOrder; ++m)
        Ji += 0.5 * sub * gr.weights[m] * G(y0 + 0.5 * sub * (1.0 + gr.nodes[m]));
      Ji += J_[j];
      phi_nodes_[j * kCellOrder + i] = C0_ * (li.B - li.S * Ji);
      dpsi_nodes_[j * kCellOrder + i] = -2.0 * alpha * p.eta4 * p.kb() * li.S;
    }
    J_[j + 1] = J_[j] + cell;
  }
  for (std::size_t j = 0; j <= N; ++j) {
    const Local l = local(hy * static_cast<double>(j));
    phi_[j] = C0_ * (l.B - l.S * J_[j]);
    dphi_[j] = C0_ * alpha * (l.dB - l.dS * J_[j] - l.S * l.G);
  }
}

double VarphiTable::inner_reduced(double y) const {
  const double hy = 2.0 * params_.K / static_cast<double>(n_);
  auto j = static_cast<std::size_t>(std::floor(y / hy));
  j = std::min(j, n_ - 1);
  const double y0 = hy * static_cast<double>(j);
  const double sub = y - y0;
  const GaussRule& gr = gauss_legendre(kCellOrder);
  double acc = 0.0;
  for (int m = 0; m < kCellOrder; ++m) acc += 0.5 * sub * gr.weights[m] * G(y0 + 0.5 * sub * (1.0 + gr.nodes[m]));
  return J_[j] + acc;
}

double VarphiTable::inner(double y) const {
  const double period = 2.0 * params_.K;
  const double m = std::floor(y / period);
  const double r = y - m * period;
  return m * J_.back() + inner_reduced(r);
}

double VarphiTable::value(double x) const {
  const double y = params_.alpha * x;
  const Local l = local(y);
  return C0_ * (l.B - l.S * inner(y));
}

double VarphiTable::derivative(double x) const {
  const double y = params_.alpha * x;
  const Local l = local(y);
  return C0_ * params_.alpha * (l.dB - l.dS * inner(y) - l.S * l.G);
}

double VarphiTable::direct_pairing(const std::function<double(double)>& g) const {
  const GaussRule& gr = gauss_legendre(kCellOrder);
  const double h = params_.L / static_cast<double>(n_);
  double acc = 0.0;
  for (std::size_t j = 0; j < n_ / 2; ++j) {
    const double x0 = h * static_cast<double>(j);
    for (int i = 0; i < kCellOrder; ++i) {
      const double xi = x0 + 0.5 * h * (1.0 + gr.nodes[i]);
      acc += 0.5 * h * gr.weights[i] * phi_nodes_[j * kCellOrder + i] * g(xi);
    }
  }
  return 2.0 * acc;
}

VarphiTable build_varphi(const WaveParams& p, std::size_t N) { return VarphiTable(p, N); }

double non_periodicity_gap(const VarphiTable& t) {
  return t.derivatives().back() - t.derivatives().front();
}

VarphiPairings varphi_pairings(const WaveParams& p, const AIntegrals& A) {
  const double L3 = p.L * p.L * p.L;
  const double K3 = p.K * p.K * p.K;
  const double kb = p.kb();
  const double k2c = 1.0 - p.kappa_sq();
  const double b = 1.0 + p.beta_sq;
  VarphiPairings r{};
  r.ip_1 = L3 / (8.0 * K3 * p.eta4 * kb) *
           (A.A1 + k2c * A.A2 / (2.0 * kb * b) - A.A3 / (2.0 * kb));
  r.ip_psi = L3 / (8.0 * K3 * kb) *
             (A.A4 + k2c * k2c * A.A5 / (4.0 * kb * b * b) - A.A6 / (4.0 * kb));
  return r;
}

VarphiPairings varphi_pairings(const WaveParams& p, const VarphiTable&) {
  return varphi_pairings(p, a_integrals(p));
}

// ---------------------------------------------------------------------------
// L+^{-1}

LinvResult linv_apply(const WaveParams& p, const VarphiTable& t, const GridFunction& f) {
  const std::size_t nt = t.size();
  const std::size_t nf = f.size();
  if (std::abs(f.L - p.L) > 1e-12 * p.L) throw ShapeError("linv_apply: f has a different period");
  if (nf > nt || nt % nf != 0) throw ShapeError("linv_apply: f grid must divide the table grid");

  // Even part of f and the size of what was discarded.
  std::vector<double> fe(nf);
  double fmax = 0.0, odd = 0.0;
  for (std::size_t j = 0; j < nf; ++j) {
    const double a = f.samples[j], b = f.samples[(nf - j) % nf];
    fe[j] = 0.5 * (a + b);
    fmax = std::max(fmax, std::abs(a));
    odd = std::max(odd, 0.5 * std::abs(a - b));
  }
  const double asym = fmax > 0.0 ? odd / fmax : 0.0;
  if (asym > 1e-8) {
    std::ostringstream msg;
    msg << "linv_apply: input is not even (relative odd part " << asym << ")";
    throw SymmetryError(msg.str());
  }

  // Trigonometric upsampling onto the table grid.
  GridFunction ft;
  ft.L = p.L;
  if (nf == nt) {
    ft.samples = fe;
  } else {
    RealFft small(nf), big(nt);
    auto hat = small.forward(fe);
    std::vector<cplx> hb(nt / 2 + 1, 0.0);
    const double scale = static_cast<double>(nt) / static_cast<double>(nf);
    for (std::size_t k = 0; k < nf / 2; ++k) hb[k] = hat[k] * scale;
    hb[nf / 2] = 0.5 * hat[nf / 2] * scale;
    ft.samples = big.inverse(hb);
  }

  const GaussRule& gr = gauss_legendre(VarphiTable::kCellOrder);
  const double h = p.L / static_cast<double>(nt);
  std::vector<std::vector<double>> f_nodes(VarphiTable::kCellOrder);
  for (int i = 0; i < VarphiTable::kCellOrder; ++i)
    f_nodes[i] = shifted_samples(ft, 0.5 * h * (1.0 + gr.nodes[i]));

  std::vector<double> P(nt + 1, 0.0), Q(nt + 1, 0.0);
  const auto& phin = t.cell_node_values();
  const auto& dpsin = t.cell_node_dpsi();
  for (std::size_t j = 0; j < nt; ++j) {
    double sp = 0.0, sq = 0.0;
    for (int i = 0; i < VarphiTable::kCellOrder; ++i) {
      const double fw = 0.5 * h * gr.weights[i] * f_nodes[i][j];
      sp += fw * phin[j * VarphiTable::kCellOrder + i];
      sq += fw * dpsin[j * VarphiTable::kCellOrder + i];
    }
    P[j + 1] = P[j] + sp;
    Q[j + 1] = Q[j] + sq;
  }

  const std::size_t half = nt / 2;
  const double ip_phi_f = 2.0 * P[half];
  const double r = psi_second_half(p) / (2.0 * t.varphi_half_prime());
  const double Cf = Q[half] - r * ip_phi_f;

  const auto& phi = t.values();
  const auto& dphi = t.derivatives();
  std::vector<double> g(nt + 1), dg(nt + 1);
  for (std::size_t j = 0; j <= nt; ++j) {
    const auto jet = eval_profile_jet(p, h * static_cast<double>(j));
    g[j] = jet.dpsi * P[j] - phi[j] * Q[j] + Cf * phi[j];
    dg[j] = jet.d2psi * P[j] - dphi[j] * Q[j] + Cf * dphi[j];
  }

  LinvResult res;
  res.asymmetry = asym;
  res.endpoint_gap = std::abs(g[nt] - g[0]);
  res.endpoint_dgap = std::abs(dg[nt] - dg[0]);
  res.g.L = p.L;
  res.g.samples.resize(nf);
  const std::size_t stride = nt / nf;
  for (std::size_t j = 0; j < nf; ++j) res.g.samples[j] = g[j * stride];
  return res;
}

// ---------------------------------------------------------------------------
// D matrix

DScalars dmatrix_scalars(const WaveParams& p) {
  DScalars s{};
  s.A = a_integrals(p);
  const double c = p.c;
  const double b = 1.0 + p.beta_sq;
  s.psi_half = psi_half(p);
  s.psi_second_half = psi_second_half(p);
  s.varphi_half_prime =
      p.L * (1.0 - p.kappa_sq()) * s.A.A2 / (4.0 * p.K * p.eta4 * p.kb() * b * b);
  const auto pr = varphi_pairings(p, s.A);
  s.ip_varphi_1 = pr.ip_1;
  s.ip_varphi_psi = pr.ip_psi;
  // L+ varphi = 0 plus integration by parts against psi^2 and psi^3.
  s.ip_varphi_psi3 = -2.0 * c * s.psi_half * s.varphi_half_prime - c * p.F1 * s.ip_varphi_1;
  s.ip_varphi_psi2 = -4.0 * c / 3.0 * s.varphi_half_prime + 2.0 * c * c / 3.0 * s.ip_varphi_1;
  s.I1 = psi_power_integral(p, 1);
  s.I2 = psi_power_integral(p, 2);
  s.I3 = psi_power_integral(p, 3);
  s.I4 = psi_power_integral(p, 4);

  const double ph = s.psi_half;
  const double r = s.psi_second_half / (2.0 * s.varphi_half_prime);
  const double P1 = s.ip_varphi_1, Pp = s.ip_varphi_psi;
  s.linv_1_1 = -2.0 * Pp + (2.0 * ph - r * P1) * P1;
  s.linv_1_psi = -1.5 * s.ip_varphi_psi2 + 0.5 * ph * ph * P1 + (ph - r * P1) * Pp;
  s.linv_psi_psi = -s.ip_varphi_psi3 + (ph * ph - r * Pp) * Pp;
  // psi^3 = -c L+ psi - c F1.
  s.linv_psi3_1 = -c * s.I1 - c * p.F1 * s.linv_1_1;
  s.linv_psi3_psi = -c * s.I2 - c * p.F1 * s.linv_1_psi;
  s.linv_psi3_psi3 = -c * s.I4 - c * p.F1 * s.linv_psi3_1;
  return s;
}

DMatrix dmatrix_from_scalars(const WaveParams& p, const DScalars& s) {
  const double c = p.c, c2 = c * c, c3 = c2 * c, c4 = c3 * c;
  std::array<std::array<double, 3>, 3> m{};
  m[0][0] = s.linv_1_1;
  m[0][1] = s.linv_1_psi / c;
  m[0][2] = s.linv_1_psi + s.linv_psi3_1 / (2.0 * c2);
  m[1][1] = p.L / c + s.linv_psi_psi / c2;
  m[1][2] = s.linv_psi3_psi / (2.0 * c3) + s.linv_psi_psi / c + s.I2 / (2.0 * c2);
  m[2][2] = s.linv_psi3_psi / c2 + s.linv_psi_psi + s.linv_psi3_psi3 / (4.0 * c4) +
            s.I4 / (4.0 * c3);
  // Lower triangle from the transposed pairings <L+^{-1} g, f>.
  m[1][0] = s.linv_1_psi / c;
  m[2][0] = s.linv_1_psi + s.linv_psi3_1 / (2.0 * c2);
  m[2][1] = s.linv_psi3_psi / (2.0 * c3) + s.linv_psi_psi / c + s.I2 / (2.0 * c2);
  return make_dmatrix(m, p.kappa, p.L);
}

DMatrix assemble_dmatrix(const WaveParams& p) { return dmatrix_from_scalars(p, dmatrix_scalars(p)); }

std::array<double, 3> symmetric3_eigenvalues(const std::array<std::array<double, 3>, 3>& m) {
  const double p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  std::array<double, 3> e{};
  if (p1 == 0.0) {
    e = {m[0][0], m[1][1], m[2][2]};
    std::sort(e.begin(), e.end());
    return e;
  }
  const double p2 = (m[0][0] - q) * (m[0][0] - q) + (m[1][1] - q) * (m[1][1] - q) +
                    (m[2][2] - q) * (m[2][2] - q) + 2.0 * p1;
  const double pp = std::sqrt(p2 / 6.0);
  std::array<std::array<double, 3>, 3> b{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / pp;
  const double detb = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                      b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                      b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(0.5 * detb, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e3 = q + 2.0 * pp * std::cos(phi);
  const double e1 = q + 2.0 * pp * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  e = {e1, 3.0 * q - e1 - e3, e3};
  std::sort(e.begin(), e.end());
  return e;
}

DMatrix make_dmatrix(const std::array<std::array<double, 3>, 3>& m, Modulus kappa, double L) {
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(m[i][j] - m[j][i]) > 1e-8 * std::max(scale, 1e-300))
        throw NumericalFailure("D matrix is not symmetric");
  DMatrix d{m, 0.0, {}, 0, kappa, L};
  d.det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  d.eigenvalues = symmetric3_eigenvalues(m);
  const double norm = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
  if (!std::isfinite(d.det) || std::abs(d.det) < 1e-12 * norm * norm * norm) {
    std::ostringstream msg;
    msg << "D is singular (det = " << d.det << "); the index count is undefined";
    throw DegenerateMatrixError(msg.str());
  }
  d.n_negative = static_cast<int>(std::count_if(d.eigenvalues.begin(), d.eigenvalues.end(),
                                                [](double e) { return e < 0.0; }));
  return d;
}

HamiltonianIndex hamiltonian_index(const DMatrix& d, int n_H) {
  const int k = n_H - d.n_negative;
  return {k, d.n_negative, k >= 0};
}

}  // namespace dsw
