#include "dsw/operator_spectra.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dsw/errors.hpp"

namespace dsw {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_grid(std::size_t N) {
  if (N < 16 || !is_power_of_two(N)) throw ShapeError("operator grid size must be a power of two >= 16");
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd build_H(const Eigen::MatrixXd& D2, const Eigen::VectorXd& psi, double c) {
  const auto N = psi.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  H.topLeftCorner(N, N) = -D2;
  for (Eigen::Index j = 0; j < N; ++j) {
    H(j, j) += c - 0.5 * psi(j) * psi(j) / c;
    H(j, N + j) = -psi(j);
    H(N + j, j) = -psi(j);
    H(N + j, N + j) = c;
  }
  return H;
}

}  // namespace

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Lplus: return "Lplus";
    case OperatorKind::Lminus: return "Lminus";
    case OperatorKind::Hcal: return "Hcal";
    case OperatorKind::dHcal: return "dHcal";
  }
  return "?";
}

std::string to_string(EigenClass c) {
  switch (c) {
    case EigenClass::Zero: return "zero";
    case EigenClass::Real: return "real";
    case EigenClass::Imaginary: return "imaginary";
    case EigenClass::Quadruplet: return "quadruplet";
  }
  return "?";
}

Eigen::MatrixXd spectral_d1_matrix(std::size_t N, double L) {
  require_grid(N);
  const auto n = static_cast<Eigen::Index>(N);
  const double h = 2.0 * std::numbers::pi / static_cast<double>(N);
  const double scale = 2.0 * std::numbers::pi / L;
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        D(i, j) = 0.0;
        continue;
      }
      const auto d = i - j;
      const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
      D(i, j) = scale * 0.5 * sgn / std::tan(0.5 * h * static_cast<double>(d));
    }
  return D;
}

Eigen::MatrixXd spectral_d2_matrix(std::size_t N, double L) {
  require_grid(N);
  const auto n = static_cast<Eigen::Index>(N);
  const double h = 2.0 * std::numbers::pi / static_cast<double>(N);
  const double scale = std::pow(2.0 * std::numbers::pi / L, 2);
  Eigen::MatrixXd D(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) {
        D(i, j) = scale * (-std::numbers::pi * std::numbers::pi / (3.0 * h * h) - 1.0 / 6.0);
        continue;
      }
      const auto d = i - j;
      const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
      const double s = std::sin(0.5 * h * static_cast<double>(d));
      D(i, j) = -scale * 0.5 * sgn / (s * s);
    }
  return D;
}

OperatorMatrix assemble_from_profile(OperatorKind kind, const GridFunction& psi_grid, double c) {
  const std::size_t N = psi_grid.size();
  require_grid(N);
  if (!(c > 0.0)) throw DomainError("assemble: speed must be positive");
  const double L = psi_grid.L;
  const Eigen::VectorXd psi = to_eigen(psi_grid.samples);
  const Eigen::MatrixXd D2 = spectral_d2_matrix(N, L);
  OperatorMatrix out{kind, N, L, c, {}};
  switch (kind) {
    case OperatorKind::Lplus:
    case OperatorKind::Lminus: {
      const double coef = kind == OperatorKind::Lplus ? 1.5 : 0.5;
      out.m = -D2;
      for (Eigen::Index j = 0; j < psi.size(); ++j) out.m(j, j) += c - coef * psi(j) * psi(j) / c;
      break;
    }
    case OperatorKind::Hcal:
      out.m = build_H(D2, psi, c);
      break;
    case OperatorKind::dHcal: {
      const Eigen::MatrixXd D1 = spectral_d1_matrix(N, L);
      const Eigen::MatrixXd H = build_H(D2, psi, c);
      const auto n = static_cast<Eigen::Index>(N);
      out.m.resize(2 * n, 2 * n);
      out.m.topRows(n) = D1 * H.topRows(n);
      out.m.bottomRows(n) = D1 * H.bottomRows(n);
      break;
    }
  }
  if (out.symmetric_kind()) out.m = 0.5 * (out.m + out.m.transpose()).eval();
  return out;
}

OperatorMatrix assemble(OperatorKind kind, const WaveParams& p, std::size_t N) {
  if (N < 128 || !is_power_of_two(N)) throw ShapeError("assemble: N must be a power of two >= 128");
  return assemble_from_profile(kind, sample_psi(p, N), p.c);
}

double default_zero_tol(const OperatorMatrix& m) {
  // Gershgorin bound on the spectral radius.
  const double radius = m.m.cwiseAbs().rowwise().sum().maxCoeff();
  return 1e3 * kEps * radius;
}

MorseIndex morse_index(const OperatorMatrix& m, double zero_tol) {
  if (!m.symmetric_kind()) throw DomainError("morse_index: operator is not symmetric");
  if (zero_tol < 0.0) zero_tol = default_zero_tol(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("morse_index: eigensolve failed");
  MorseIndex r{0, 0};
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    if (e < -zero_tol) ++r.n_neg;
    else if (e <= zero_tol) ++r.n_zero;
  }
  return r;
}

double kernel_alignment(const OperatorMatrix& m, const Eigen::VectorXd& target) {
  if (!m.symmetric_kind()) throw DomainError("kernel_alignment: operator is not symmetric");
  if (target.size() != m.m.rows()) throw ShapeError("kernel_alignment: size mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.m);
  if (es.info() != Eigen::Success) throw NumericalFailure("kernel_alignment: eigensolve failed");
  Eigen::Index i0 = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&i0);
  const Eigen::VectorXd v = es.eigenvectors().col(i0);
  return std::abs(v.dot(target)) / (v.norm() * target.norm());
}

Eigen::VectorXd sampled_dpsi(const WaveParams& p, std::size_t N) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(N));
  for (std::size_t j = 0; j < N; ++j)
    v(static_cast<Eigen::Index>(j)) = eval_profile_jet(p, p.L * j / static_cast<double>(N)).dpsi;
  return v;
}

Eigen::VectorXd sampled_dpsi_dphi(const WaveParams& p, std::size_t N) {
  const auto n = static_cast<Eigen::Index>(N);
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto jet = eval_profile_jet(p, p.L * static_cast<double>(j) / static_cast<double>(N));
    v(j) = jet.dpsi;
    v(n + j) = jet.psi * jet.dpsi / p.c;
  }
  return v;
}

namespace {

struct DenseSpectrum {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  double rho;
};

DenseSpectrum dense_spectrum(const OperatorMatrix& A, bool vectors) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(A.m, vectors);
  if (es.info() != Eigen::Success) throw NumericalFailure("nonsymmetric eigensolve did not converge");
  DenseSpectrum s{es.eigenvalues(), vectors ? Eigen::MatrixXcd(es.eigenvectors()) : Eigen::MatrixXcd(), 0.0};
  s.rho = s.values.cwiseAbs().maxCoeff();
  return s;
}

// Radius of the roundoff-split zero eigenvalue. The kernel of the collocated
// d_xi H carries a 2x2 Jordan block, so perturbations of size eps ||A||
// move it by about sqrt(eps ||A||).
double zero_radius(double rho) { return 10.0 * std::sqrt(kEps * rho); }

double snap_tolerance(double rho) { return 1e3 * kEps * rho; }

}  // namespace

SpectrumReport unstable_modes(const WaveParams& p, std::size_t N) {
  if (N < 256 || !is_power_of_two(N)) throw ShapeError("unstable_modes: N must be a power of two >= 256");
  const OperatorMatrix Lp = assemble(OperatorKind::Lplus, p, N);
  const OperatorMatrix H = assemble(OperatorKind::Hcal, p, N);
  const OperatorMatrix A = assemble(OperatorKind::dHcal, p, N);

  SpectrumReport r{};
  r.N = N;
  r.n_Lplus = morse_index(Lp).n_neg;
  r.n_H = morse_index(H).n_neg;
  r.kernel_overlap_Lplus = kernel_alignment(Lp, sampled_dpsi(p, N));
  r.kernel_overlap_H = kernel_alignment(H, sampled_dpsi_dphi(p, N));

  const DenseSpectrum s = dense_spectrum(A, true);
  r.zero_cluster_radius = zero_radius(s.rho);
  r.snap_tol = snap_tolerance(s.rho);
  const auto n = s.values.size();

  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> lam = s.values(i);
    ClassifiedEigenvalue ce{lam, EigenClass::Zero, 0, 0.0};
    const double tol = std::max(r.snap_tol, 1e-7 * std::abs(lam));
    double best_neg = std::numeric_limits<double>::infinity();
    double best_conj = best_neg;
    for (Eigen::Index j = 0; j < n; ++j) {
      best_neg = std::min(best_neg, std::abs(s.values(j) + lam));
      best_conj = std::min(best_conj, std::abs(s.values(j) - std::conj(lam)));
    }
    ce.symmetry_residual = std::max(best_neg, best_conj) / std::max(1.0, std::abs(lam));

    if (std::abs(lam) < r.zero_cluster_radius) {
      ce.cls = EigenClass::Zero;
      ++r.zero_cluster_size;
    } else if (std::abs(lam.imag()) <= tol) {
      ce.cls = EigenClass::Real;
      if (lam.real() > tol) ++r.k_r;
    } else if (std::abs(lam.real()) <= tol) {
      ce.cls = EigenClass::Imaginary;
      const Eigen::VectorXcd v = s.vectors.col(i);
      const Eigen::VectorXd a = v.real(), b = v.imag();
      const double q = a.dot(H.m * a) + b.dot(H.m * b);
      ce.krein_sign = q < 0.0 ? -1 : 1;
      if (lam.imag() > 0.0 && q < 0.0) ++r.krein_negative;
    } else {
      ce.cls = EigenClass::Quadruplet;
      if (lam.real() > tol && lam.imag() > tol) ++r.k_c;
    }
    if (ce.cls != EigenClass::Zero) r.max_real_part = std::max(r.max_real_part, lam.real());
    r.max_symmetry_residual = std::max(r.max_symmetry_residual, ce.symmetry_residual);
    r.eigenvalues.push_back(ce);
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](const auto& x, const auto& y) {
    if (x.lambda.real() != y.lambda.real()) return x.lambda.real() > y.lambda.real();
    return x.lambda.imag() > y.lambda.imag();
  });
  return r;
}

CountIdentity count_identity(const SpectrumReport& r, const DMatrix& d, int n_H) {
  const int lhs = r.k_ham_spectral();
  const int rhs = hamiltonian_index(d, n_H).k_ham;
  return {lhs, rhs, lhs == rhs};
}

LeadingMode leading_mode(const WaveParams& p, std::size_t N) {
  const OperatorMatrix A = assemble(OperatorKind::dHcal, p, N);
  const DenseSpectrum s = dense_spectrum(A, true);
  const double rz = zero_radius(s.rho);
  Eigen::Index best = -1;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (std::abs(s.values(i)) < rz) continue;
    if (best < 0 || s.values(i).real() > s.values(best).real()) best = i;
  }
  if (best < 0) throw NumericalFailure("leading_mode: spectrum is entirely in the zero cluster");
  LeadingMode m;
  m.lambda = s.values(best);
  m.snap_tol = snap_tolerance(s.rho);
  const Eigen::VectorXcd v = s.vectors.col(best);
  // Rotate so the largest component is real, then keep the real part.
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Eigen::VectorXd re = (v * std::conj(v(imax)) / std::abs(v(imax))).real();
  const auto n = static_cast<Eigen::Index>(N);
  m.U.assign(re.data(), re.data() + n);
  m.V.assign(re.data() + n, re.data() + 2 * n);
  return m;
}

std::array<std::array<double, 3>, 3> spectral_dmatrix(const WaveParams& p, std::size_t N) {
  const OperatorMatrix H = assemble(OperatorKind::Hcal, p, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.m);
  if (es.info() != Eigen::Success) throw NumericalFailure("spectral_dmatrix: eigensolve failed");
  Eigen::Index i0 = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&i0);
  Eigen::VectorXd inv = es.eigenvalues().cwiseInverse();
  inv(i0) = 0.0;
  const auto n = static_cast<Eigen::Index>(N);
  const Eigen::VectorXd psi = to_eigen(sample_psi(p, N).samples);
  std::array<Eigen::VectorXd, 3> rhs;
  for (auto& v : rhs) v = Eigen::VectorXd::Zero(2 * n);
  rhs[0].head(n).setOnes();
  rhs[1].tail(n).setOnes();
  rhs[2].head(n) = psi;
  rhs[2].tail(n) = psi.array().square() / (2.0 * p.c);
  const Eigen::MatrixXd& V = es.eigenvectors();
  const double h = p.L / static_cast<double>(N);
  std::array<std::array<double, 3>, 3> D{};
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd x = V * (inv.asDiagonal() * (V.transpose() * rhs[i]));
    for (int j = 0; j < 3; ++j) D[j][i] = h * rhs[j].dot(x);
  }
  return D;
}

}  // namespace dsw
