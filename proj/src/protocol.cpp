#include "cvdc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cvdc/error.hpp"
#include "cvdc/families.hpp"
#include "cvdc/optim.hpp"

namespace cvdc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kCrossCheckBits = 1e-6;
constexpr std::size_t kCoarseGrid = 64;

void require_energy(double nbar) {
  if (!(nbar > 0.0) || !std::isfinite(nbar)) {
    throw Error(ErrorCode::kDomain, "sender energy must be positive and finite");
  }
}

// Detector inefficiency: each mode is mixed with vacuum on a splitter of
// transmissivity tau and only the transmitted port is kept.
GaussianChannel detector_loss(double tau) {
  return GaussianChannel{std::sqrt(tau), 1.0 - tau, ChannelKind::kAttenuator,
                         kDefaultEnvConvention};
}

double sq(double v) { return v * v; }

}  // namespace

Mat4 StandardForm::covariance() const {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = a;
  m(2, 2) = m(3, 3) = c;
  m(0, 2) = m(2, 0) = b1;
  m(1, 3) = m(3, 1) = b2;
  return m;
}

const char* to_string(Scheme scheme) noexcept {
  return scheme == Scheme::kAdaptive ? "adaptive" : "non-adaptive";
}

void NoiseScenario::validate() const {
  const GaussianChannel stages[] = {{x1, y1}, {x2, y2}, {x3, y3}};
  for (int i = 0; i < 3; ++i) {
    if (!is_cp(stages[i])) {
      throw Error(ErrorCode::kDomain, "noise stage " + std::to_string(i + 1) +
                                          " is not completely positive");
    }
  }
  if (!(tau > 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kDomain, "detector efficiency must lie in (0, 1]");
  }
}

NoiseScenario NoiseScenario::from_channels(const GaussianChannel& dist_a,
                                           const GaussianChannel& dist_b,
                                           const GaussianChannel& post, double tau) {
  NoiseScenario sc{dist_a.x, dist_a.y, dist_b.x, dist_b.y, post.x, post.y, tau};
  sc.validate();
  return sc;
}

TwoModeState pipeline_state(const StandardForm& sf, const NoiseScenario& sc, double alpha_x,
                            double alpha_p) {
  sc.validate();
  TwoModeState st;
  st.cov = sf.covariance();
  if (!is_physical(st.cov)) {
    throw Error(ErrorCode::kContract, "input standard form is not a physical state");
  }
  st = apply_to_mode(st, {sc.x1, sc.y1}, Mode::A);
  st = apply_to_mode(st, {sc.x2, sc.y2}, Mode::B);
  st.d(0) += std::sqrt(2.0) * alpha_x;
  st.d(1) += std::sqrt(2.0) * alpha_p;
  st = apply_to_mode(st, {sc.x3, sc.y3}, Mode::A);
  const GaussianChannel loss = detector_loss(sc.tau);
  st = apply_to_mode(st, loss, Mode::A);
  st = apply_to_mode(st, loss, Mode::B);
  return st;
}

std::pair<double, double> noise_g(const StandardForm& sf, const NoiseScenario& sc) {
  const double common = -2.0 + sf.c * sq(sc.x2) + sc.y2 + sc.y3 +
                        sc.x3 * (sf.a * sq(sc.x1) * sc.x3 + sc.x3 * sc.y1);
  const double cross = 2.0 * sc.x1 * sc.x2 * sc.x3;
  const double g1 = 2.0 + (common - cross * sf.b1) * sc.tau;
  const double g2 = 2.0 + (common + cross * sf.b2) * sc.tau;
  if (!(g1 > 0.0) || !(g2 > 0.0)) {
    throw Error(ErrorCode::kUnphysical, "non-positive readout variance; scenario is unphysical");
  }
  return {g1, g2};
}

double mutual_information(const StandardForm& sf, const NoiseScenario& sc, double sigma) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kDomain, "encoding width must be >= 0");
  const auto [g1, g2] = noise_g(sf, sc);
  const double signal = 4.0 * sq(sc.x3) * sq(sigma) * sc.tau;
  return 0.5 * (std::log2(1.0 + signal / g1) + std::log2(1.0 + signal / g2));
}

double mi_gaussian_oracle(const StandardForm& sf, const NoiseScenario& sc, double sigma) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kDomain, "encoding width must be >= 0");
  if (sigma == 0.0) return 0.0;
  const auto [g1, g2] = noise_g(sf, sc);
  // Variables (alpha_x, alpha_p, beta_x, beta_p); beta = k alpha + noise with
  // conditional variances G2/2 (x) and G1/2 (p).
  const double k = sc.x3 * std::sqrt(2.0 * sc.tau);
  const double s2 = sq(sigma);
  Mat4 joint = Mat4::Zero();
  joint(0, 0) = joint(1, 1) = s2;
  joint(0, 2) = joint(2, 0) = k * s2;
  joint(1, 3) = joint(3, 1) = k * s2;
  joint(2, 2) = sq(k) * s2 + g2 / 2.0;
  joint(3, 3) = sq(k) * s2 + g1 / 2.0;
  const double det_joint = joint.determinant();
  const double det_alpha = joint.block<2, 2>(0, 0).determinant();
  const double det_beta = joint.block<2, 2>(2, 2).determinant();
  if (!(det_joint > 0.0)) {
    throw Error(ErrorCode::kContract, "degenerate joint covariance");
  }
  return 0.5 * std::log2(det_alpha * det_beta / det_joint);
}

double sender_energy(const StandardForm& sf, const NoiseScenario& sc, double sigma) {
  const double n =
      (-1.0 + sc.y3 + sq(sc.x3) * (sf.a * sq(sc.x1) + sc.y1 + 4.0 * sq(sigma))) * sc.tau / 2.0;
  if (n < -kPhysicalTol) throw Error(ErrorCode::kInfeasible, "negative sender energy");
  return std::max(n, 0.0);
}

double sender_energy_pre_channel(const StandardForm& sf, const NoiseScenario& sc, double sigma) {
  return (sf.a * sq(sc.x1) + sc.y1 - 1.0) / 2.0 + 2.0 * sq(sigma);
}

double sigma_adaptive(const StandardForm& sf, const NoiseScenario& sc, double nbar) {
  if (sc.x3 == 0.0) {
    throw Error(ErrorCode::kDomain, "encoded mode is fully lost (x3 = 0)");
  }
  double radicand = 2.0 * nbar + (1.0 - sq(sc.x3) * (sf.a * sq(sc.x1) + sc.y1) - sc.y3) * sc.tau;
  if (radicand < 0.0) {
    if (radicand < -1e-12 * std::max(1.0, 2.0 * nbar)) {
      throw Error(ErrorCode::kInfeasible, "state energy alone exceeds the photon budget");
    }
    radicand = 0.0;
  }
  return std::sqrt(radicand) / (2.0 * std::abs(sc.x3) * std::sqrt(sc.tau));
}

double r_opt_closed_form(const NoiseScenario& sc, double nbar) {
  const double x1 = sc.x1, y1 = sc.y1, x2 = sc.x2, y2 = sc.y2, x3 = sc.x3, y3 = sc.y3;
  const double t = sc.tau;
  const double k = -1.0 + sq(x3) * y1 + y3;
  const double tail = sq(x1) * sq(x3) * (2.0 + (-1.0 + y2) * t);
  const double d_minus =
      2.0 * nbar * sq(x2 - x1 * x3) - sq(x2) * k * t + 2.0 * x1 * x2 * x3 * k * t + tail;
  const double d_plus =
      2.0 * nbar * sq(x2 + x1 * x3) - sq(x2) * k * t - 2.0 * x1 * x2 * x3 * k * t + tail;
  const double inner = -2.0 * std::pow(x1, 3) * x2 * std::pow(x3, 3) * t +
                       0.5 * std::sqrt(16.0 * std::pow(x1, 6) * sq(x2) * std::pow(x3, 6) * sq(t) +
                                       4.0 * d_plus * d_minus);
  const double ratio = inner / d_minus;
  if (!std::isfinite(ratio) || !(ratio > 0.0) ||
      std::abs(d_minus) < 1e-12 * std::max(1.0, std::abs(d_plus))) {
    return kNaN;
  }
  return 0.5 * std::log(ratio);
}

double r_max_feasible(const NoiseScenario& sc, double nbar) {
  const double free_budget = 2.0 * nbar + (1.0 - sc.y3 - sq(sc.x3) * sc.y1) * sc.tau;
  const double per_cosh = sq(sc.x3 * sc.x1) * sc.tau;
  if (per_cosh == 0.0) {
    return free_budget >= 0.0 ? std::numeric_limits<double>::infinity() : kNaN;
  }
  const double cosh_max = free_budget / per_cosh;
  if (cosh_max < 1.0) return cosh_max > 1.0 - 1e-12 ? 0.0 : kNaN;
  return 0.5 * std::acosh(cosh_max);
}

CapacityResult capacity(const NoiseScenario& sc, double nbar, Scheme scheme) {
  require_energy(nbar);
  sc.validate();
  if (scheme == Scheme::kNonAdaptive) {
    const double r = 0.5 * std::log1p(2.0 * nbar);
    const double sigma = std::sqrt(std::max(0.0, (nbar - sq(std::sinh(r))) / 2.0));
    return {mutual_information(tmsv(r), sc, sigma), r, sigma, scheme, true};
  }

  const CapacityResult infeasible{kNaN, kNaN, kNaN, scheme, false};
  if (sc.x3 == 0.0) return infeasible;
  const double r_max = r_max_feasible(sc, nbar);
  if (std::isnan(r_max)) return infeasible;
  const double upper = std::min(std::asinh(std::sqrt(2.0 * nbar)) + 1.0, r_max);

  const ScalarFn mi_at = [&](double r) {
    const StandardForm sf = tmsv(r);
    return mutual_information(sf, sc, sigma_adaptive(sf, sc, nbar));
  };
  if (upper <= 0.0) {
    return {mi_at(0.0), 0.0, sigma_adaptive(tmsv(0.0), sc, nbar), scheme, true};
  }
  const Bracket b(0.0, upper, kArgTol);
  const ScalarOptimum numeric = polish_maximum(mi_at, maximize_scalar_scanned(mi_at, b, kCoarseGrid), b);

  ScalarOptimum chosen = numeric;
  bool warning = false;
  const double r_closed = r_opt_closed_form(sc, nbar);
  if (std::isfinite(r_closed)) {
    if (r_closed >= 0.0 && r_closed <= upper) {
      const double mi_closed = mi_at(r_closed);
      if (std::abs(mi_closed - numeric.value) <= kCrossCheckBits) {
        chosen = {r_closed, mi_closed};
      } else {
        warning = true;
      }
    } else {
      warning = true;
    }
  }
  CapacityResult out{chosen.value, chosen.x, sigma_adaptive(tmsv(chosen.x), sc, nbar), scheme,
                     true};
  out.transcription_warning = warning;
  return out;
}

double classical_capacity(double nbar) {
  if (!(nbar >= 0.0)) throw Error(ErrorCode::kDomain, "photon number must be >= 0");
  if (nbar == 0.0) return 0.0;
  return (nbar + 1.0) * std::log2(nbar + 1.0) - nbar * std::log2(nbar);
}

double quantum_advantage(const NoiseScenario& sc, double nbar, Scheme scheme) {
  const CapacityResult cap = capacity(sc, nbar, scheme);
  if (!cap.feasible) return kNaN;
  return cap.capacity_bits - classical_capacity(nbar);
}

double negative_conditional_entropy(const NoiseScenario& sc, double nbar) {
  const CapacityResult cap = capacity(sc, nbar, Scheme::kAdaptive);
  if (!cap.feasible) {
    throw Error(ErrorCode::kInfeasible, "no feasible squeezing for this energy budget");
  }
  return -conditional_entropy(pipeline_state(tmsv(cap.r_opt), sc, 0.0, 0.0));
}

double threshold_energy(const NoiseScenario& sc, Scheme scheme, double lo, double hi, double tol) {
  const ScalarFn q = [&](double n) {
    const double v = quantum_advantage(sc, n, scheme);
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };
  try {
    return find_root_bisect(q, Bracket(lo, hi, tol));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kBracket) throw;
    throw Error(ErrorCode::kThresholdNotFound,
                "no threshold energy in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

DeltaScResult delta_sc(const NoiseScenario& sc, double nbar) {
  const double n_th = threshold_energy(sc, Scheme::kAdaptive);
  const double at_th = negative_conditional_entropy(sc, n_th);
  const double here = negative_conditional_entropy(sc, nbar);
  return {here - at_th, here, at_th, n_th};
}

}  // namespace cvdc
