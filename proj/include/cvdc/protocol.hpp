#pragma once

// Noisy continuous-variable dense coding: distribution noise on both modes,
// displacement encoding on mode A, noise on the encoded mode, and double-homodyne
// decoding with detector efficiency tau (balanced splitter).

#include <utility>

#include "cvdc/channels.hpp"
#include "cvdc/phase_space.hpp"

namespace cvdc {

/// Two-mode covariance in standard form: A = a I, B = diag(b1, b2), C = c I.
struct StandardForm {
  double a = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double c = 1.0;

  Mat4 covariance() const;
};

struct NoiseScenario {
  double x1 = 1.0, y1 = 0.0;  // distribution noise, sender's mode
  double x2 = 1.0, y2 = 0.0;  // distribution noise, receiver's mode
  double x3 = 1.0, y3 = 0.0;  // noise on the encoded mode
  double tau = 1.0;           // detector efficiency

  static NoiseScenario noiseless() { return {}; }

  /// Validating constructor: every stage CP and 0 < tau <= 1 (kDomain otherwise).
  static NoiseScenario from_channels(const GaussianChannel& dist_a, const GaussianChannel& dist_b,
                                     const GaussianChannel& post, double tau);

  void validate() const;
};

enum class Scheme { kAdaptive, kNonAdaptive };

const char* to_string(Scheme scheme) noexcept;

struct CapacityResult {
  double capacity_bits;  // NaN when !feasible
  double r_opt;
  double sigma_opt;
  Scheme scheme;
  bool feasible;
  // Closed-form optimum disagreed with the numerical one by more than 1e-6 bits.
  bool transcription_warning = false;
};

/// State just before the perfect homodyne readout, for message (alpha_x, alpha_p).
TwoModeState pipeline_state(const StandardForm& sf, const NoiseScenario& sc, double alpha_x,
                            double alpha_p);

/// Conditional-variance denominators (G1, G2) of the decoded quadratures.
std::pair<double, double> noise_g(const StandardForm& sf, const NoiseScenario& sc);

/// Mutual information between message and readout, in bits.
double mutual_information(const StandardForm& sf, const NoiseScenario& sc, double sigma);

/// Same quantity from the joint Gaussian of (alpha, beta) via determinants.
double mi_gaussian_oracle(const StandardForm& sf, const NoiseScenario& sc, double sigma);

/// Mean photon number of the sender's mode at the detector, averaged over messages.
double sender_energy(const StandardForm& sf, const NoiseScenario& sc, double sigma);

/// Sender's mode energy right after encoding (before the encoded-mode channel
/// and the detector). Comparison only; capacities use sender_energy.
double sender_energy_pre_channel(const StandardForm& sf, const NoiseScenario& sc, double sigma);

/// Encoding width that spends the rest of the photon budget nbar.
/// kInfeasible if the state alone exceeds the budget, kDomain if x3 == 0.
double sigma_adaptive(const StandardForm& sf, const NoiseScenario& sc, double nbar);

/// Closed-form adaptive optimal squeezing for the TMSV family. NaN when the
/// expression is singular (e.g. the noiseless limit, where it reads 0/0).
double r_opt_closed_form(const NoiseScenario& sc, double nbar);

/// Largest TMSV squeezing whose own energy fits in the budget (+inf if unbounded,
/// NaN if even r = 0 does not fit).
double r_max_feasible(const NoiseScenario& sc, double nbar);

/// Dense coding capacity of the TMSV family.
CapacityResult capacity(const NoiseScenario& sc, double nbar, Scheme scheme);

/// Coherent-state baseline (n+1)log2(n+1) - n log2 n.
double classical_capacity(double nbar);

/// capacity - classical_capacity; NaN when the capacity is infeasible.
double quantum_advantage(const NoiseScenario& sc, double nbar, Scheme scheme);

/// -S(A|B) of the pre-readout state of a TMSV at the adaptive optimum r_opt(nbar).
double negative_conditional_entropy(const NoiseScenario& sc, double nbar);

/// Root of the advantage in nbar within [lo, hi] (infeasible energies count as
/// no advantage). kThresholdNotFound if there is no sign change.
double threshold_energy(const NoiseScenario& sc, Scheme scheme, double lo = 1e-3,
                        double hi = 1e3, double tol = 1e-10);

struct DeltaScResult {
  double delta_sc;            // -S(A|B)(nbar) + S(A|B)(nbar_th)
  double neg_cond_entropy;    // -S(A|B)(nbar)
  double neg_cond_entropy_th; // -S(A|B)(nbar_th)
  double nbar_threshold;
};

DeltaScResult delta_sc(const NoiseScenario& sc, double nbar);

}  // namespace cvdc
