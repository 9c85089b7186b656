#pragma once

// Two-mode Gaussian phase-space algebra. Quadratures are ordered
// (x_A, p_A, x_B, p_B) and the vacuum covariance is the identity.

#include <array>

#include <Eigen/Dense>

namespace cvdc {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;

enum class Mode { A, B };

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalTol = 1e-9;

struct TwoModeState {
  Vec4 d = Vec4::Zero();
  Mat4 cov = Mat4::Identity();

  static TwoModeState vacuum() { return {}; }
};

// 4x4 matrix checked on construction to preserve the symplectic form.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(const Mat4& m);

  const Mat4& matrix() const { return m_; }

 private:
  Mat4 m_;
};

/// Omega = [[0,1],[-1,0]] (+) [[0,1],[-1,0]].
const Mat4& symplectic_form();

/// Symplectic eigenvalues of a two-mode covariance, descending.
/// Throws kContract if cov is not symmetric.
std::array<double, 2> symplectic_eigenvalues(const Mat4& cov);

/// Single-mode symplectic eigenvalue, sqrt(det).
double symplectic_eigenvalue(const Mat2& cov);

/// s(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2), in bits.
/// Inputs in [1 - 1e-9, 1) are clamped to 1; anything lower throws kUnphysical.
double entropy_fn(double x);

double von_neumann_entropy(const Mat4& cov);
double von_neumann_entropy(const Mat2& cov);

/// S(A|B) = S(AB) - S(B). Negative for sufficiently entangled states.
double conditional_entropy(const TwoModeState& state);

Mat2 reduce_mode(const Mat4& cov, Mode mode);

TwoModeState apply_symplectic(const TwoModeState& state, const SymplecticMatrix& s);

/// Beam splitter of transmissivity tau in [0, 1] acting on modes (A, B).
SymplecticMatrix beam_splitter(double tau);

/// Mean photon number (tr(block)/2 - 1)/2 + |d_mode|^2/2.
double mean_photon(const TwoModeState& state, Mode mode);

/// True iff the smallest symplectic eigenvalue is >= 1 - 1e-9.
bool is_physical(const Mat4& cov);

}  // namespace cvdc
