#include "cvdc/phase_space.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cvdc/error.hpp"

namespace cvdc {

namespace {

void require_symmetric(const Mat4& cov) {
  if (!cov.allFinite()) {
    throw Error(ErrorCode::kContract, "covariance has non-finite entries");
  }
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw Error(ErrorCode::kContract, "covariance is not symmetric");
  }
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

SymplecticMatrix::SymplecticMatrix(const Mat4& m) : m_(m) {
  const Mat4& omega = symplectic_form();
  if ((m * omega * m.transpose() - omega).cwiseAbs().maxCoeff() > kSymmetryTol) {
    throw Error(ErrorCode::kContract, "matrix does not preserve the symplectic form");
  }
}

const Mat4& symplectic_form() {
  static const Mat4 omega = [] {
    Mat4 w = Mat4::Zero();
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    w(2, 3) = 1.0;
    w(3, 2) = -1.0;
    return w;
  }();
  return omega;
}

std::array<double, 2> symplectic_eigenvalues(const Mat4& cov) {
  require_symmetric(cov);
  // Omega*cov is Hamiltonian: its spectrum is {+-i nu_1, +-i nu_2}, so the
  // moduli come in equal pairs.
  Eigen::EigenSolver<Mat4> solver(symplectic_form() * cov, false);
  std::array<double, 4> moduli{};
  for (int i = 0; i < 4; ++i) moduli[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return {0.5 * (moduli[0] + moduli[1]), 0.5 * (moduli[2] + moduli[3])};
}

double symplectic_eigenvalue(const Mat2& cov) {
  return std::sqrt(std::max(0.0, cov.determinant()));
}

double entropy_fn(double x) {
  if (!(x >= 1.0 - kPhysicalTol)) {
    throw Error(ErrorCode::kUnphysical,
                "symplectic eigenvalue " + std::to_string(x) + " is below 1");
  }
  if (x <= 1.0) return 0.0;
  return xlog2x((x + 1.0) / 2.0) - xlog2x((x - 1.0) / 2.0);
}

double von_neumann_entropy(const Mat4& cov) {
  const auto nu = symplectic_eigenvalues(cov);
  return entropy_fn(nu[0]) + entropy_fn(nu[1]);
}

double von_neumann_entropy(const Mat2& cov) {
  if (std::abs(cov(0, 1) - cov(1, 0)) > kSymmetryTol) {
    throw Error(ErrorCode::kContract, "covariance is not symmetric");
  }
  return entropy_fn(symplectic_eigenvalue(cov));
}

double conditional_entropy(const TwoModeState& state) {
  return von_neumann_entropy(state.cov) - von_neumann_entropy(reduce_mode(state.cov, Mode::B));
}

Mat2 reduce_mode(const Mat4& cov, Mode mode) {
  const int k = mode == Mode::A ? 0 : 2;
  return cov.block<2, 2>(k, k);
}

TwoModeState apply_symplectic(const TwoModeState& state, const SymplecticMatrix& s) {
  const Mat4& m = s.matrix();
  TwoModeState out;
  out.d = m * state.d;
  out.cov = m * state.cov * m.transpose();
  return out;
}

SymplecticMatrix beam_splitter(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kDomain, "beam splitter transmissivity must lie in [0, 1]");
  }
  const double t = std::sqrt(tau);
  const double r = std::sqrt(1.0 - tau);
  Mat4 m;
  m << t, 0, r, 0,
       0, t, 0, r,
       r, 0, -t, 0,
       0, r, 0, -t;
  return SymplecticMatrix(m);
}

double mean_photon(const TwoModeState& state, Mode mode) {
  const int k = mode == Mode::A ? 0 : 2;
  const double tr = state.cov(k, k) + state.cov(k + 1, k + 1);
  const double d2 = state.d(k) * state.d(k) + state.d(k + 1) * state.d(k + 1);
  return (tr / 2.0 - 1.0) / 2.0 + d2 / 2.0;
}

bool is_physical(const Mat4& cov) {
  // Symplectic moduli alone miss indefinite matrices (real eigenvalues of Omega*cov).
  if (Eigen::SelfAdjointEigenSolver<Mat4>(cov, Eigen::EigenvaluesOnly).eigenvalues()(0) <= 0.0) {
    return false;
  }
  return symplectic_eigenvalues(cov)[1] >= 1.0 - kPhysicalTol;
}

}  // namespace cvdc
