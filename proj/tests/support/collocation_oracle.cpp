#include "collocation_oracle.hpp"

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace dsw::oracle {

Eigen::VectorXd profile(const WaveParams& p, std::size_t N) {
  Eigen::VectorXd psi(static_cast<Eigen::Index>(N));
  const double k = p.kappa.value();
  for (std::size_t j = 0; j < N; ++j) {
    const double u = p.alpha * p.L * static_cast<double>(j) / static_cast<double>(N);
    // Boost's dn loses ~1e-4 at u = K (the half-period node), so dn comes
    // from sn through dn^2 = 1 - k^2 sn^2.
    const double sn = boost::math::jacobi_sn(k, u);
    const double dn = std::sqrt(1.0 - k * k * sn * sn);
    psi(static_cast<Eigen::Index>(j)) = p.eta4 * dn * dn / (1.0 + p.beta_sq * sn * sn);
  }
  return psi;
}

Eigen::MatrixXd fourier_d2(std::size_t N, double L) {
  using cplx = std::complex<double>;
  const auto n = static_cast<Eigen::Index>(N);
  Eigen::MatrixXcd F(n, n), Finv(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(a * b) / static_cast<double>(N);
      F(a, b) = std::polar(1.0, -th);
      Finv(a, b) = std::polar(1.0, th) / static_cast<double>(N);
    }
  Eigen::VectorXcd sym(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const double k = static_cast<double>(m <= n / 2 ? m : m - n) * 2.0 * std::numbers::pi / L;
    sym(m) = cplx(-k * k, 0.0);
  }
  return (Finv * sym.asDiagonal() * F).real();
}

LplusOracle::LplusOracle(const WaveParams& p, std::size_t N)
    : h_(p.L / static_cast<double>(N)), psi_(profile(p, N)) {
  Eigen::MatrixXd A = -fourier_d2(N, p.L);
  for (Eigen::Index j = 0; j < psi_.size(); ++j) A(j, j) += p.c - 1.5 * psi_(j) * psi_(j) / p.c;
  A = 0.5 * (A + A.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolve failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
  evals_.cwiseAbs().minCoeff(&kernel_);
}

Eigen::VectorXd LplusOracle::solve(const Eigen::VectorXd& f) const {
  Eigen::VectorXd coef = evecs_.transpose() * f;
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef(i) = i == kernel_ ? 0.0 : coef(i) / evals_(i);
  return evecs_ * coef;
}

double LplusOracle::pairing(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  return h_ * solve(f).dot(g);
}

std::array<std::array<double, 3>, 3> dmatrix(const WaveParams& p, std::size_t N) {
  const auto n = static_cast<Eigen::Index>(N);
  const Eigen::VectorXd psi = profile(p, N);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  H.topLeftCorner(n, n) = -fourier_d2(N, p.L);
  for (Eigen::Index j = 0; j < n; ++j) {
    H(j, j) += p.c - 0.5 * psi(j) * psi(j) / p.c;
    H(j, n + j) = H(n + j, j) = -psi(j);
    H(n + j, n + j) = p.c;
  }
  H = 0.5 * (H + H.transpose()).eval();
  // Pseudo-inverse off the one-dimensional kernel spanned by (psi', phi').
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success) throw std::runtime_error("oracle: eigensolve failed");
  Eigen::Index k0 = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&k0);
  Eigen::VectorXd inv = es.eigenvalues().cwiseInverse();
  inv(k0) = 0.0;
  const Eigen::MatrixXd Hp = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  std::array<Eigen::VectorXd, 3> r;
  for (auto& v : r) v = Eigen::VectorXd::Zero(2 * n);
  r[0].head(n).setOnes();
  r[1].tail(n).setOnes();
  r[2].head(n) = psi;
  r[2].tail(n) = psi.array().square() / (2.0 * p.c);
  const double h = p.L / static_cast<double>(N);
  std::array<std::array<double, 3>, 3> D{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) D[i][j] = h * r[j].dot(Hp * r[i]);
  return D;
}

}  // namespace dsw::oracle
