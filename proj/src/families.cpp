#include "cvdc/families.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "cvdc/error.hpp"
#include "cvdc/optim.hpp"

namespace cvdc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sq(double v) { return v * v; }

// Interleaved (x1, p1, x2, p2) index -> block (x1, x2, p1, p2) index.
constexpr int kBlockIndex[4] = {0, 2, 1, 3};

Mat4 block_to_interleaved(const Mat4& m) {
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = m(kBlockIndex[i], kBlockIndex[j]);
  return out;
}

double uniform53(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

}  // namespace

StandardForm tmsv(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kDomain, "squeezing must be >= 0");
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return {ch, sh, -sh, ch};
}

TwoModeState kappa_state(double r, double kappa) {
  if (!(r >= 0.0)) throw Error(ErrorCode::kDomain, "squeezing must be >= 0");
  if (!(kappa >= 0.0 && kappa <= 0.5)) throw Error(ErrorCode::kDomain, "kappa must lie in [0, 1/2]");
  const double sh = std::sinh(2.0 * r);
  const double p = std::exp(-2.0 * r) * (1.0 + std::expm1(4.0 * r) * kappa);
  const double q = std::exp(2.0 * r) - 2.0 * kappa * sh;
  const double o = 2.0 * std::sqrt(kappa * (1.0 - kappa)) * sh;
  TwoModeState st;
  st.cov << p, 0, o, 0,
            0, q, 0, -o,
            o, 0, q, 0,
            0, -o, 0, p;
  return st;
}

double kappa_mutual_information(double r, double kappa, const NoiseScenario& sc, double nbar) {
  if (!(kappa >= 0.0 && kappa <= 0.5)) throw Error(ErrorCode::kDomain, "kappa must lie in [0, 1/2]");
  const double x1 = sc.x1, y1 = sc.y1, x2 = sc.x2, y2 = sc.y2, x3 = sc.x3, y3 = sc.y3;
  const double t = sc.tau;
  double num = 2.0 * nbar - (-1.0 + sq(x3) * y1 + y3) * t - sq(x1) * sq(x3) * t * std::cosh(2.0 * r);
  if (num < 0.0) {
    if (num < -1e-12 * std::max(1.0, 2.0 * nbar)) {
      throw Error(ErrorCode::kInfeasible, "state energy alone exceeds the photon budget");
    }
    num = 0.0;
  }
  const double sh = std::sinh(2.0 * r);
  const double p = std::exp(-2.0 * r) * (1.0 + std::expm1(4.0 * r) * kappa);
  const double q = std::exp(2.0 * r) - 2.0 * kappa * sh;
  const double cross = 4.0 * std::sqrt((1.0 - kappa) * kappa) * x1 * x2 * sh;
  const double d1 = 2.0 + t * (-2.0 + y2 + y3 + sq(x2) * q + x3 * (p * sq(x1) * x3 + x3 * y1 - cross));
  const double d2 = 2.0 + t * (-2.0 + p * sq(x2) + y2 + y3 + x3 * (x3 * y1 - cross + sq(x1) * x3 * q));
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw Error(ErrorCode::kUnphysical, "non-positive readout variance");
  }
  return 0.5 * std::log2(1.0 + num / d1) + 0.5 * std::log2(1.0 + num / d2);
}

CapacityResult kappa_capacity(double kappa, const NoiseScenario& sc, double nbar) {
  if (!(nbar > 0.0)) throw Error(ErrorCode::kDomain, "sender energy must be positive");
  sc.validate();
  const CapacityResult infeasible{kNaN, kNaN, kNaN, Scheme::kAdaptive, false};
  const double r_max = r_max_feasible(sc, nbar);
  if (std::isnan(r_max) || sc.x3 == 0.0) return infeasible;
  const double upper = std::min(std::asinh(std::sqrt(2.0 * nbar)) + 1.0, r_max);
  const ScalarFn mi = [&](double r) { return kappa_mutual_information(r, kappa, sc, nbar); };
  auto sigma_at = [&](double r) {
    return sigma_adaptive(StandardForm{std::cosh(2.0 * r), 0.0, 0.0, 1.0}, sc, nbar);
  };
  if (upper <= 0.0) return {mi(0.0), 0.0, sigma_at(0.0), Scheme::kAdaptive, true};
  const Bracket b(0.0, upper, kArgTol);
  const ScalarOptimum best = polish_maximum(mi, maximize_scalar_scanned(mi, b, 64), b);
  return {best.value, best.x, sigma_at(best.x), Scheme::kAdaptive, true};
}

TwoModeState pure_class_state(double a) {
  if (!(a >= 1.0) || !std::isfinite(a)) throw Error(ErrorCode::kDomain, "pure class needs a >= 1");
  const double o = std::sqrt(a * a - 1.0);
  TwoModeState st;
  st.cov << a, 0, o, 0,
            0, a, 0, -o,
            o, 0, a, 0,
            0, -o, 0, a;
  return st;
}

PureClassCapacity pure_class_capacity(double nbar) {
  if (!(nbar > 0.0)) throw Error(ErrorCode::kDomain, "sender energy must be positive");
  const double a_hi = 2.0 * nbar + 1.0;
  // Budget nbar = (a + 4 sigma^2 - 1)/2 fixes sigma^2 = (a_hi - a)/4.
  const ScalarFn mi = [&](double a) {
    const double sigma2 = std::max(0.0, (a_hi - a) / 4.0);
    return std::log2(1.0 + 2.0 * sigma2 * (a + std::sqrt(a * a - 1.0)));
  };
  const Bracket b(1.0, a_hi, kArgTol);
  const ScalarOptimum best = polish_maximum(mi, maximize_scalar_scanned(mi, b, 64), b);
  return {best.x, best.value};
}

Mat2 single_mode_squeezer(double s, double theta) {
  Mat2 rot;
  rot << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  return std::cosh(s) * Mat2::Identity() - std::sinh(s) * rot;
}

SymplecticMatrix two_mode_squeezer(double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  Mat4 m;
  m << ch, 0, sh, 0,
       0, ch, 0, -sh,
       sh, 0, ch, 0,
       0, -sh, 0, ch;
  return SymplecticMatrix(m);
}

TwoModeState decomp_state(double r, double s1, double s2, double theta1, double theta2) {
  if (!(s1 >= 0.0) || !(s2 >= 0.0)) {
    throw Error(ErrorCode::kDomain, "squeezing degrees must be >= 0");
  }
  Mat4 local = Mat4::Zero();
  local.block<2, 2>(0, 0) = single_mode_squeezer(s1, theta1);
  local.block<2, 2>(2, 2) = single_mode_squeezer(s2, theta2);
  const Mat4 s = two_mode_squeezer(r).matrix() * local;
  TwoModeState st;
  st.cov = s * s.transpose();
  st.cov = 0.5 * (st.cov + st.cov.transpose());
  return st;
}

double decomp_mutual_information(double r, double s2, double nbar) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  // Encoding power left after the state's own sender energy; this is half the
  // commonly printed zeta, matching the constructed state.
  double zeta = 0.5 * (ch * ch + sh * sh * std::cosh(2.0 * s2) - 2.0 * nbar - 1.0) *
                (std::tanh(s2) - 1.0);
  if (zeta < 0.0) {
    if (zeta < -1e-12 * std::max(1.0, nbar)) {
      throw Error(ErrorCode::kInfeasible, "state energy alone exceeds the photon budget");
    }
    zeta = 0.0;
  }
  return 0.5 * (std::log2(1.0 + std::exp(2.0 * r) * zeta) +
                std::log2(1.0 + std::exp(2.0 * (r + s2)) * zeta));
}

std::pair<double, double> decomp_stationarity_residuals(double r, double s2, double nbar) {
  const double e2r = std::exp(2.0 * r);
  const double first = std::cosh(2.0 * s2) * (e2r - 1.0) + e2r - 4.0 * nbar - 1.0;
  const double sech = 1.0 / std::cosh(s2);
  const double second =
      sq(std::sinh(r)) * std::sinh(2.0 * s2) *
          (4.0 * std::sinh(2.0 * r) - 3.0 * std::cosh(2.0 * r) - 1.0) -
      4.0 * nbar * nbar * std::tanh(s2) * sech * sech;
  return {first, second};
}

DecompOptimum decomp_optimum(double nbar) {
  if (!(nbar > 0.0)) throw Error(ErrorCode::kDomain, "sender energy must be positive");
  constexpr double kShrink = 1.0 - 1e-12;
  const double r_cap = std::asinh(std::sqrt(2.0 * nbar)) + 1.0;
  const WindowFn r_window = [&](double s2) {
    const double c2 = std::cosh(2.0 * s2);
    const double cosh_max = (4.0 * nbar + 1.0 + c2) / (1.0 + c2);
    return Bracket(0.0, std::min(r_cap, kShrink * 0.5 * std::acosh(cosh_max)));
  };
  const WindowFn s2_window = [&](double r) {
    double w = 1.0;
    const double sh2 = sq(std::sinh(r));
    if (sh2 > 0.0) {
      const double c2_max = (2.0 * nbar + 1.0 - sq(std::cosh(r))) / sh2;
      if (c2_max >= 1.0) w = std::min(w, kShrink * 0.5 * std::acosh(c2_max));
    }
    return Bracket(-w, w);
  };
  const PlanarFn mi = [&](double r, double s2) { return decomp_mutual_information(r, s2, nbar); };
  const PlanarOptimum opt = maximize_alternating(mi, r_window, s2_window, 1.0, 0.3);
  const auto [res_r, res_s2] = decomp_stationarity_residuals(opt.x, opt.y, nbar);
  return {opt.x, opt.y, opt.value, res_r, res_s2, opt.sweeps, opt.converged};
}

Mat4 passive_from_unitary(const Eigen::Matrix2cd& u) {
  Mat4 block;
  block.block<2, 2>(0, 0) = u.real();
  block.block<2, 2>(0, 2) = u.imag();
  block.block<2, 2>(2, 0) = -u.imag();
  block.block<2, 2>(2, 2) = u.real();
  return block_to_interleaved(block);
}

Eigen::Matrix2cd haar_su2(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const double u1 = uniform53(gen);
  const double u2 = uniform53(gen);
  const double u3 = uniform53(gen);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // Uniform point on the 3-sphere (Shoemake).
  const std::complex<double> a(std::sqrt(1.0 - u1) * std::sin(kTwoPi * u2),
                               std::sqrt(1.0 - u1) * std::cos(kTwoPi * u2));
  const std::complex<double> b(std::sqrt(u1) * std::sin(kTwoPi * u3),
                               std::sqrt(u1) * std::cos(kTwoPi * u3));
  Eigen::Matrix2cd u;
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

TwoModeState random_pure(double nbar, std::uint64_t seed) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw Error(ErrorCode::kDomain, "random pure state needs nbar > 0");
  }
  const double d = nbar / 2.0;
  Mat4 gamma = Mat4::Zero();
  gamma.diagonal() << d, d, 1.0 / d, 1.0 / d;
  const Mat4 o = passive_from_unitary(haar_su2(seed));
  TwoModeState st;
  st.cov = o * block_to_interleaved(gamma) * o.transpose();
  st.cov = 0.5 * (st.cov + st.cov.transpose());
  if (symplectic_eigenvalues(st.cov)[1] < 1.0 - 1e-6) {
    throw Error(ErrorCode::kDomain, "random state is not physical");
  }
  return st;
}

}  // namespace cvdc
