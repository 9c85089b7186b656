#pragma once

// State families: two-mode squeezed vacuum, the beam-splitter "kappa" class,
// the maximal pure class, the squeezer decomposition, and random pure states.

#include <cstdint>

#include "cvdc/phase_space.hpp"
#include "cvdc/protocol.hpp"

namespace cvdc {

/// a = c = cosh 2r, b1 = -b2 = sinh 2r.
StandardForm tmsv(double r);

/// p-squeezed and x-squeezed vacua (squeezing r) mixed on a splitter of
/// transmissivity kappa in [0, 1/2]. kappa = 1/2 is the TMSV.
TwoModeState kappa_state(double r, double kappa);

/// Adaptive mutual information of the kappa class with the encoding width
/// already eliminated through the energy budget. kInfeasible if the budget
/// is exceeded by the state itself.
double kappa_mutual_information(double r, double kappa, const NoiseScenario& sc, double nbar);

/// Maximizes kappa_mutual_information over r in [0, asinh(sqrt(2 nbar)) + 1].
CapacityResult kappa_capacity(double kappa, const NoiseScenario& sc, double nbar);

/// Covariance blocks a I and sqrt(a^2 - 1) sigma_z; a >= 1.
TwoModeState pure_class_state(double a);

struct PureClassCapacity {
  double a_opt;
  double capacity_bits;
};

PureClassCapacity pure_class_capacity(double nbar);

/// Single-mode squeezer with degree s and angle theta.
Mat2 single_mode_squeezer(double s, double theta);

/// Two-mode squeezer S2(r); S2 S2^T is the TMSV covariance.
SymplecticMatrix two_mode_squeezer(double r);

/// Vacuum squeezed locally (s1, theta1), (s2, theta2), then two-mode squeezed by r.
TwoModeState decomp_state(double r, double s1, double s2, double theta1, double theta2);

/// Mutual information of decomp_state(r, 0, s2, 0, pi) with the encoding width
/// eliminated through the sender energy. s2 is a signed degree (negative means
/// the squeeze angle is flipped). kInfeasible when the state exceeds the budget.
double decomp_mutual_information(double r, double s2, double nbar);

/// Residuals of the two stationarity conditions of decomp_mutual_information.
std::pair<double, double> decomp_stationarity_residuals(double r, double s2, double nbar);

struct DecompOptimum {
  double r;
  double s2;
  double mi_bits;
  double residual_r;
  double residual_s2;
  int sweeps;
  bool converged;
};

/// Joint maximization over (r, s2) by alternating golden-section sweeps.
DecompOptimum decomp_optimum(double nbar);

/// Random pure two-mode state O (D + D^{-1}) O^T with D = (nbar/2) I and O a
/// passive transform built from a Haar-random SU(2) matrix. Deterministic in seed.
TwoModeState random_pure(double nbar, std::uint64_t seed);

/// Passive orthogonal-symplectic matrix built from a 2x2 unitary, in interleaved ordering.
Mat4 passive_from_unitary(const Eigen::Matrix2cd& u);

/// Haar-random SU(2) element drawn from a mt19937_64 seeded with `seed`.
Eigen::Matrix2cd haar_su2(std::uint64_t seed);

}  // namespace cvdc
