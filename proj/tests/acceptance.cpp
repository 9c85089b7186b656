// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cvdc/channels.hpp"
#include "cvdc/error.hpp"
#include "cvdc/families.hpp"
#include "cvdc/holevo.hpp"
#include "cvdc/optim.hpp"
#include "cvdc/phase_space.hpp"
#include "cvdc/protocol.hpp"
#include "oracles.hpp"

using namespace cvdc;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }

NoiseScenario dist(const GaussianChannel& c) {
  return NoiseScenario::from_channels(c, c, identity_channel(), 1.0);
}

NoiseScenario post(const GaussianChannel& c) {
  return NoiseScenario::from_channels(identity_channel(), identity_channel(), c, 1.0);
}

NoiseScenario detector(double tau) {
  return NoiseScenario::from_channels(identity_channel(), identity_channel(), identity_channel(), tau);
}

NoiseScenario everywhere(const GaussianChannel& c) { return NoiseScenario::from_channels(c, c, c, 1.0); }

// Advantage with infeasible points counted as "no advantage".
double adv(const NoiseScenario& sc, double n, Scheme s) {
  const double q = quantum_advantage(sc, n, s);
  return std::isnan(q) ? -1.0 : q;
}

double param_threshold(const std::function<NoiseScenario(double)>& make, Scheme s, double lo, double hi,
                       double n = 30.0) {
  return find_root_bisect([&](double p) { return adv(make(p), n, s); }, Bracket(lo, hi, kThresholdTol));
}

double neg_cond_entropy_closed(double n) {
  const double m = 1.0 + 2.0 * n;
  return ((1 + n) * (1 + n) * std::log2((1 + n) * (1 + n)) - n * n * std::log2(n * n) - m * std::log2(m)) / m;
}

// ---------------------------------------------------------------------------

Outcome c1() {
  const auto sc = NoiseScenario::noiseless();
  double worst = 0.0;
  for (double n : {1.0, 5.0, 30.0, 50.0}) {
    const double ref = std::log2(1 + n + n * n);
    worst = std::max(worst, std::abs(capacity(sc, n, Scheme::kAdaptive).capacity_bits - ref));
    worst = std::max(worst, std::abs(capacity(sc, n, Scheme::kNonAdaptive).capacity_bits - ref));
  }
  const double th = threshold_energy(sc, Scheme::kAdaptive);
  return {worst < 1e-9 && within(th, 1.883, 1e-3),
          fmt("max |C - log2(1+N+N^2)| = %.2e bits; N_th = %.5f (target 1.883 +- 0.001)", worst, th)};
}

Outcome c2() {
  const auto sc = NoiseScenario::noiseless();
  const double th = threshold_energy(sc, Scheme::kAdaptive);
  const double at_th = negative_conditional_entropy(sc, th);
  double worst = 0.0;
  for (int i = 1; i <= 300; ++i) {
    const double n = 30.0 * i / 300.0;
    worst = std::max(worst, std::abs(negative_conditional_entropy(sc, n) - neg_cond_entropy_closed(n)));
  }
  return {within(at_th, 1.717, 1e-3) && worst < 1e-9,
          fmt("-S(A|B) at N_th = %.5f (target 1.717 +- 0.001); max |closed form - entropy path| over "
              "300 points in (0, 30] = %.2e",
              at_th, worst)};
}

Outcome c3() {
  const double s_ad = param_threshold([](double s) { return dist(amplifier_channel(s)); }, Scheme::kAdaptive, 0.3, 0.6);
  const double s_na = param_threshold([](double s) { return dist(amplifier_channel(s)); }, Scheme::kNonAdaptive, 0.3, 0.6);
  auto zone = [](Scheme s) {
    return sign_change_scan([s](double th) { return adv(dist(attenuator_channel(th)), 30.0, s); }, 0.0, M_PI, 400);
  };
  const auto za = zone(Scheme::kAdaptive);
  const auto zn = zone(Scheme::kNonAdaptive);
  const bool zones = za.size() == 2 && zn.size() == 2 && within(za[0], 0.571, 5e-3) && within(za[1], 2.57, 5e-3) &&
                     within(zn[0], 0.428, 5e-3) && within(zn[1], 2.713, 5e-3);
  auto at = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : NAN; };
  return {within(s_ad, 0.467, 5e-3) && within(s_na, 0.398, 5e-3) && zones,
          fmt("amplifier s_th ad/non-ad = %.4f/%.4f (0.467/0.398); pure-loss dead zone ad [%.4f, %.4f] "
              "(0.571, 2.57), non-ad [%.4f, %.4f] (0.428, 2.713)",
              s_ad, s_na, at(za, 0), at(za, 1), at(zn, 0), at(zn, 1))};
}

Outcome c4() {
  const double s_ad = param_threshold([](double s) { return post(amplifier_channel(s)); }, Scheme::kAdaptive, 0.2, 0.8);
  const double t_ad = param_threshold([](double t) { return post(attenuator_channel(t)); }, Scheme::kAdaptive, 0.2, 1.0);
  const double s_na = param_threshold([](double s) { return post(amplifier_channel(s)); }, Scheme::kNonAdaptive, 0.2, 0.8);
  const double t_na = param_threshold([](double t) { return post(attenuator_channel(t)); }, Scheme::kNonAdaptive, 0.2, 1.0);
  return {within(s_ad, 0.539, 5e-3) && within(t_ad, 0.636, 5e-3) && within(s_na, 0.411, 5e-3) &&
              within(t_na, 0.379, 5e-3),
          fmt("s_th-ad = %.4f (0.539), theta_th-ad = %.4f (0.636), s_th-non-ad = %.4f (0.411), "
              "theta_th-non-ad = %.4f (0.379)",
              s_ad, t_ad, s_na, t_na)};
}

Outcome c5() {
  const double n09 = threshold_energy(detector(0.9), Scheme::kAdaptive);
  const double n08 = threshold_energy(detector(0.8), Scheme::kAdaptive);
  const double tau_ad = param_threshold(detector, Scheme::kAdaptive, 0.5, 0.99);
  const double tau_na = param_threshold(detector, Scheme::kNonAdaptive, 0.5, 0.99);
  return {within(n09, 3.181, 1e-2) && within(n08, 7.085, 1e-2) && within(tau_ad, 1.0 / std::sqrt(2.0), 5e-3) &&
              within(tau_na, 0.85, 1e-2),
          fmt("N_th(tau=0.9) = %.4f (3.181), N_th(tau=0.8) = %.4f (7.085), tau_th ad = %.4f (0.7071), "
              "non-ad = %.4f (0.85)",
              n09, n08, tau_ad, tau_na)};
}

Outcome c6() {
  const double a1 = threshold_energy(dist(amplifier_channel(0.1)), Scheme::kAdaptive);
  const double a4 = threshold_energy(dist(amplifier_channel(0.4)), Scheme::kAdaptive);
  const double l1 = threshold_energy(dist(attenuator_channel(0.1)), Scheme::kAdaptive);
  const double l4 = threshold_energy(dist(attenuator_channel(0.4)), Scheme::kAdaptive);
  return {within(a1, 2.088, 1e-2) && within(a4, 11.555, 1e-2) && within(l1, 1.969, 1e-2) && within(l4, 4.572, 1e-2),
          fmt("amplifier N_th(s=0.1/0.4) = %.4f/%.4f (2.088/11.555); pure-loss N_th(theta=0.1/0.4) = "
              "%.4f/%.4f (1.969/4.572)",
              a1, a4, l1, l4)};
}

Outcome c7() {
  struct Case {
    double gamma, nbar, target;
  };
  const Case cases[] = {{0.1, 0.5, 2.061}, {0.2, 0.5, 1.031}, {0.3, 0.5, 0.687}, {0.1, 1.0, 1.321}, {0.1, 1.5, 0.966}};
  auto run = [&](EnvConvention conv, std::string& values) {
    bool ok = true;
    for (const auto& c : cases) {
      double t = NAN;
      try {
        t = param_threshold([&](double tt) { return everywhere(environmental_channel(c.gamma, tt, c.nbar, conv)); },
                            Scheme::kAdaptive, 1e-3, 20.0);
      } catch (const Error&) {
      }
      ok = ok && within(t, c.target, 2e-2);
      values += fmt("%s%.4f", values.empty() ? "" : "/", t);
    }
    return ok;
  };
  std::string full, half;
  const bool full_ok = run(EnvConvention::kFullPhoton, full);
  if (full_ok) {
    return {true, fmt("nbar1 (nbar+1) convention reproduces t_th = %s", full.c_str())};
  }
  const bool half_ok = run(EnvConvention::kHalfPhoton, half);
  return {half_ok, fmt("nbar1 (nbar+1) convention fails: t_th = %s; rerun under nbarhalf (nbar+1/2): t_th = %s "
                       "(targets 2.061/1.031/0.687/1.321/0.966 +- 0.02) -> %s convention reproduces the targets",
                       full.c_str(), half.c_str(), half_ok ? "nbarhalf" : "neither")};
}

Outcome c8() {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int n = 0;
  while (n < 1000) {
    const StandardForm sf{1.0 + 5.0 * u(gen), 6.0 * (2 * u(gen) - 1), 6.0 * (2 * u(gen) - 1), 1.0 + 5.0 * u(gen)};
    if (!is_physical(sf.covariance())) continue;
    auto pick = [&]() -> GaussianChannel {
      const double k = u(gen);
      if (k < 0.25) return identity_channel();
      if (k < 0.5) return amplifier_channel(0.6 * u(gen), 1.0 + u(gen));
      if (k < 0.75) return attenuator_channel(3.0 * u(gen), 1.0 + u(gen));
      return environmental_channel(0.3 * u(gen), 3.0 * u(gen), 0.5 + u(gen));
    };
    const NoiseScenario sc = NoiseScenario::from_channels(pick(), pick(), pick(), 0.05 + 0.95 * u(gen));
    const double sigma = 4.0 * u(gen);
    worst = std::max(worst, std::abs(mutual_information(sf, sc, sigma) - mi_gaussian_oracle(sf, sc, sigma)));
    ++n;
  }
  return {worst < 1e-9, fmt("max |MI - joint-Gaussian oracle| over %d random tuples = %.2e bits", n, worst)};
}

Outcome c9() {
  double worst = 0.0;
  const auto sc = NoiseScenario::noiseless();
  for (int i = 0; i < 50; ++i) {
    const double n = 0.1 + (50.0 - 0.1) * i / 49.0;
    worst = std::max(worst, std::abs(pure_class_capacity(n).capacity_bits - capacity(sc, n, Scheme::kAdaptive).capacity_bits));
  }
  return {worst < 1e-10, fmt("max |C_pure - C_TMSV| over 50 points in [0.1, 50] = %.2e bits", worst)};
}

Outcome c10() {
  const double n = 30.0;
  struct Setting {
    const char* name;
    NoiseScenario sc;
  };
  const Setting settings[] = {
      {"amplifier s=0.1 (distribution)", dist(amplifier_channel(0.1))},
      {"pure-loss theta=0.2 (post)", post(attenuator_channel(0.2))},
      {"environment gamma=0.1 nbar=0.5 t=1", everywhere(environmental_channel(0.1, 1.0, 0.5))},
      {"detector tau=0.8", detector(0.8)},
  };
  const double ccl = classical_capacity(n);
  bool ok = true;
  std::string detail;
  for (const auto& s : settings) {
    std::size_t best_q = 0, best_d = 0;
    double max_q = -1e300, max_d = -1e300;
    for (int i = 0; i < 50; ++i) {
      const double k = 0.5 * i / 49.0;
      const double q_noisy = kappa_capacity(k, s.sc, n).capacity_bits - ccl;
      const double q_clean = kappa_capacity(k, NoiseScenario::noiseless(), n).capacity_bits - ccl;
      const double d = q_clean - q_noisy;
      if (q_noisy > max_q) max_q = q_noisy, best_q = i;
      if (d > max_d) max_d = d, best_d = i;
    }
    ok = ok && best_q == 49 && best_d == 49;
    detail += fmt("%s%s: argmax Q at kappa=%.3f, dQ at kappa=%.3f", detail.empty() ? "" : "; ", s.name,
                  0.5 * best_q / 49.0, 0.5 * best_d / 49.0);
  }
  return {ok, detail};
}

Outcome c11() {
  bool ok = true;
  std::string detail;
  for (double n : {5.0, 30.0}) {
    const auto d = decomp_optimum(n);
    const double r_ref = 0.5 * std::log(1 + 2 * n);
    ok = ok && std::abs(d.s2) < 1e-4 && std::abs(d.r - r_ref) < 1e-4 && std::abs(d.residual_r) < 1e-6 &&
         std::abs(d.residual_s2) < 1e-6;
    detail += fmt("%sN=%g: s2 = %.1e, |r - r_ref| = %.1e, residuals %.1e/%.1e", detail.empty() ? "" : "; ", n, d.s2,
                  std::abs(d.r - r_ref), std::abs(d.residual_r), std::abs(d.residual_s2));
  }
  return {ok, detail};
}

Outcome c12() {
  bool ok = true;
  std::string detail;
  for (double n : {30.0, 40.0, 50.0}) {
    const auto samples = scatter_study(n, 10000, 20240000 + static_cast<std::uint64_t>(n));
    const auto m = summarize(samples);
    ok = ok && std::abs(m.rank_correlation - 1.0) < 1e-6;
    detail += fmt("%sN=%g: rho = %.9f, slope = %.4f, violations = %zu", detail.empty() ? "" : "; ", n,
                  m.rank_correlation, m.slope, m.monotonicity_violations);
  }
  return {ok, detail};
}

Outcome c13() {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t spectrum = 0, cp = 0, dominance = 0, physical = 0;

  for (int i = 0; i < 1000; ++i) {
    const Mat4 cov = oracle::random_physical_cov(gen);
    const Mat4 s = oracle::random_symplectic(gen, 0.5);
    Mat4 moved = s * cov * s.transpose();
    moved = 0.5 * (moved + moved.transpose());
    const auto a = symplectic_eigenvalues(cov);
    const auto b = symplectic_eigenvalues(moved);
    if (std::abs(a[0] - b[0]) > 1e-9 * a[0] || std::abs(a[1] - b[1]) > 1e-9 * a[0]) ++spectrum;
  }
  for (int i = 0; i < 1000; ++i) {
    const auto amp = amplifier_channel(3.0 * u(gen));
    const auto loss = attenuator_channel(2 * M_PI * u(gen));
    if (std::abs(amp.y - (amp.x * amp.x - 1.0)) > 1e-12 * std::max(1.0, amp.y)) ++cp;
    if (std::abs(loss.y - std::abs(loss.x * loss.x - 1.0)) > 1e-12) ++cp;
  }
  auto pick = [&]() -> GaussianChannel {
    const double k = u(gen);
    if (k < 0.2) return identity_channel();
    if (k < 0.45) return amplifier_channel(0.6 * u(gen), 1.0 + u(gen));
    if (k < 0.7) return attenuator_channel(3.0 * u(gen), 1.0 + u(gen));
    return environmental_channel(0.3 * u(gen), 2.0 * u(gen), 0.5 + u(gen));
  };
  int feasible_pairs = 0;
  for (int i = 0; i < 200; ++i) {
    const NoiseScenario sc = NoiseScenario::from_channels(pick(), pick(), pick(), 0.5 + 0.5 * u(gen));
    const double n = 0.5 + 49.5 * u(gen);
    const auto ad = capacity(sc, n, Scheme::kAdaptive);
    const auto na = capacity(sc, n, Scheme::kNonAdaptive);
    if (na.feasible) {
      ++feasible_pairs;
      if (!ad.feasible || ad.capacity_bits < na.capacity_bits - 1e-9) ++dominance;
    }
    for (int j = 0; j < 5; ++j) {
      const StandardForm sf = tmsv(2.0 * u(gen));
      const auto st = pipeline_state(sf, sc, 3.0 * (2 * u(gen) - 1), 3.0 * (2 * u(gen) - 1));
      if (!is_physical(st.cov)) ++physical;
    }
  }
  return {spectrum + cp + dominance + physical == 0,
          fmt("violations: spectrum invariance %zu/1000, CP saturation %zu/2000, adaptive >= non-adaptive "
              "%zu/%d feasible of 200, pipeline physicality %zu/1000",
              spectrum, cp, dominance, feasible_pairs, physical)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"noiseless capacity identity and threshold", c1},
      {"conditional-entropy threshold", c2},
      {"distribution-noise thresholds", c3},
      {"post-encoding thresholds", c4},
      {"detector imperfection", c5},
      {"threshold energies under distribution noise", c6},
      {"environmental noise threshold times", c7},
      {"mutual-information oracle equivalence", c8},
      {"pure-class equality", c9},
      {"kappa-scan dominance", c10},
      {"squeezer-decomposition optimality", c11},
      {"holevo monotonicity", c12},
      {"property suites", c13},
  };
  int failed = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu criteria, %d failed, %.1f s\n", criteria.size(), failed, secs);
  return failed == 0 ? 0 : 1;
}
