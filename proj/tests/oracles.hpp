#pragma once

// Reference computations for the tests. Each one is written from first
// principles and shares no code path with the library function it checks.

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;

// Symplectic spectrum from the two Williamson invariants
// Delta = det A + det B + 2 det C and det(cov).
inline std::array<double, 2> williamson_spectrum(const Mat4& cov) {
  const Mat2 a = cov.block<2, 2>(0, 0);
  const Mat2 b = cov.block<2, 2>(2, 2);
  const Mat2 c = cov.block<2, 2>(0, 2);
  const double delta = a.determinant() + b.determinant() + 2.0 * c.determinant();
  const double det = cov.determinant();
  const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
  return {std::sqrt((delta + disc) / 2.0), std::sqrt(std::max(0.0, (delta - disc) / 2.0))};
}

inline double s_bits(double x) {
  if (x <= 1.0) return 0.0;
  const double p = (x + 1.0) / 2.0, m = (x - 1.0) / 2.0;
  return p * std::log2(p) - m * std::log2(m);
}

inline Mat2 rotation(double phi) {
  Mat2 r;
  r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return r;
}

inline Mat2 squeeze(double s) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(-s);
  m(1, 1) = std::exp(s);
  return m;
}

inline Mat4 local(const Mat2& sa, const Mat2& sb) {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = sa;
  m.block<2, 2>(2, 2) = sb;
  return m;
}

// Mixing of the two modes with angle t: (a, b) -> (cos t a + sin t b, -sin t a + cos t b).
inline Mat4 mixer(double t) {
  Mat4 m = Mat4::Zero();
  const double c = std::cos(t), s = std::sin(t);
  for (int q = 0; q < 2; ++q) {
    m(q, q) = c;
    m(q, 2 + q) = s;
    m(2 + q, q) = -s;
    m(2 + q, 2 + q) = c;
  }
  return m;
}

inline Mat4 random_symplectic(std::mt19937_64& gen, double max_squeeze = 1.0) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> sq(-max_squeeze, max_squeeze);
  Mat4 m = Mat4::Identity();
  for (int k = 0; k < 3; ++k) {
    m = local(rotation(ang(gen)) * squeeze(sq(gen)), rotation(ang(gen)) * squeeze(sq(gen))) * m;
    m = mixer(ang(gen)) * m;
  }
  return m;
}

// Williamson form S diag(n1, n1, n2, n2) S^T with n_i >= 1.
inline Mat4 random_physical_cov(std::mt19937_64& gen, double max_nu = 3.0) {
  std::uniform_real_distribution<double> nu(1.0, max_nu);
  Mat4 d = Mat4::Zero();
  const double n1 = nu(gen), n2 = nu(gen);
  d.diagonal() << n1, n1, n2, n2;
  const Mat4 s = random_symplectic(gen);
  Mat4 c = s * d * s.transpose();
  return 0.5 * (c + c.transpose());
}

// Full decoding chain for an arbitrary two-mode covariance: scalar channels
// (x1,y1) on A, (x2,y2) on B, (x3,y3) on A after encoding, detector loss tau.
// The readout variances are Var(x_A - x_B) and Var(p_A + p_B); the encoded
// signal enters both with gain sqrt(tau) x3.
struct Chain {
  double x1 = 1, y1 = 0, x2 = 1, y2 = 0, x3 = 1, y3 = 0, tau = 1;
};

inline Mat4 through_chain(const Mat4& cov, const Chain& ch) {
  Mat4 xa = Mat4::Identity();
  xa(0, 0) = xa(1, 1) = ch.x1 * ch.x3 * std::sqrt(ch.tau);
  xa(2, 2) = xa(3, 3) = ch.x2 * std::sqrt(ch.tau);
  Mat4 add = Mat4::Zero();
  const double ya = (ch.x3 * ch.x3 * ch.y1 + ch.y3) * ch.tau + (1.0 - ch.tau);
  const double yb = ch.y2 * ch.tau + (1.0 - ch.tau);
  add.diagonal() << ya, ya, yb, yb;
  return xa * cov * xa.transpose() + add;
}

// Mutual information with the encoding width fixed by the sender energy
// measured on the detected sender mode.
inline double budget_mi(const Mat4& cov, const Chain& ch, double nbar) {
  const Mat4 out = through_chain(cov, ch);
  const double g1 = out(0, 0) + out(2, 2) - 2.0 * out(0, 2);
  const double g2 = out(1, 1) + out(3, 3) + 2.0 * out(1, 3);
  const double own = ((out(0, 0) + out(1, 1)) / 2.0 - 1.0) / 2.0;
  const double gain = ch.x3 * ch.x3 * ch.tau;
  const double sigma2 = (nbar - own) / (2.0 * gain);
  return 0.5 * std::log2(1.0 + 4.0 * gain * sigma2 / g1) +
         0.5 * std::log2(1.0 + 4.0 * gain * sigma2 / g2);
}

inline double classical(double n) {
  return n <= 0.0 ? 0.0 : (n + 1.0) * std::log2(n + 1.0) - n * std::log2(n);
}

}  // namespace oracle
