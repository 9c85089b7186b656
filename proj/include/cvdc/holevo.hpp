#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cvdc/phase_space.hpp"

namespace cvdc {

struct PureStateSample {
  TwoModeState state;
  double nbar_sender;
  double holevo_bits;
  double entanglement_bits;
  std::uint64_t seed;
};

/// Entropy of the message-averaged state cov + 4 sigma^2 (I (+) 0). For pure
/// inputs the average-state entropy term vanishes, so this is the Holevo quantity.
/// kDomain if the state is not pure (symplectic eigenvalue above 1 + 1e-6).
double holevo_pure(const TwoModeState& state, double sigma);

/// Entropy of the sender's reduced state.
double entanglement_pure(const TwoModeState& state);

/// n_samples random pure states at fixed nbar (sample i uses seed + i), sorted
/// by entanglement. nbar_sender records nbar + 4 sigma^2.
std::vector<PureStateSample> scatter_study(double nbar, std::size_t n_samples, std::uint64_t seed,
                                           double sigma = 1.0);

struct ScatterSummary {
  double rank_correlation;  // Spearman, holevo vs entanglement
  double slope;             // least-squares holevo = slope * entanglement + intercept
  double intercept;
  std::size_t monotonicity_violations;  // drops larger than 1e-9 after sorting by entanglement
};

ScatterSummary summarize(std::span<const PureStateSample> samples);

/// Spearman rank correlation with average ranks for ties.
double rank_correlation(std::span<const double> xs, std::span<const double> ys);

}  // namespace cvdc
