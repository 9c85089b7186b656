#pragma once

// Deterministic 1-D/2-D optimization and root finding.

#include <cstddef>
#include <functional>
#include <vector>

namespace cvdc {

using ScalarFn = std::function<double(double)>;
using PlanarFn = std::function<double(double, double)>;

inline constexpr double kArgTol = 1e-8;
inline constexpr double kThresholdTol = 1e-6;

struct Bracket {
  double lo;
  double hi;
  double tol;

  Bracket(double lo, double hi, double tol = kArgTol);
};

struct ScalarOptimum {
  double x;
  double value;
};

/// Golden-section search for a maximum of f on [lo, hi]. The endpoints are
/// evaluated too; the best evaluated point is returned. Non-finite values
/// throw kNonFinite naming the offending argument.
ScalarOptimum maximize_scalar(const ScalarFn& f, const Bracket& b);

/// maximize_scalar after a uniform pre-scan of `coarse` points that narrows
/// the bracket to the two cells around the best sample.
ScalarOptimum maximize_scalar_scanned(const ScalarFn& f, const Bracket& b, std::size_t coarse);

/// Moves an approximate interior maximizer onto the zero of a five-point
/// finite-difference derivative inside [x - width, x + width] ∩ [lo, hi].
/// Returns `opt` unchanged when no sign change is bracketed or the refined
/// point is not at least as good.
ScalarOptimum polish_maximum(const ScalarFn& f, const ScalarOptimum& opt, const Bracket& b,
                             double width = 1e-5, double step = 1e-3);

/// Bisection on [lo, hi]; requires f(lo), f(hi) of opposite sign (zero counts
/// as a root). Infinite values are treated by sign; NaN throws kNonFinite.
double find_root_bisect(const ScalarFn& f, const Bracket& b);

/// Uniform scan with `steps` intervals; every sign change is refined by
/// bisection. A grid point where f is exactly zero is emitted once.
std::vector<double> sign_change_scan(const ScalarFn& f, double lo, double hi, std::size_t steps,
                                     double tol = kThresholdTol);

struct PlanarOptimum {
  double x;
  double y;
  double value;
  int sweeps;
  bool converged;
};

/// Feasible coordinate window for one variable given the other.
using WindowFn = std::function<Bracket(double other)>;

/// Alternating 1-D maximization. Each sweep maximizes over x with y fixed
/// (window x_window(y)), then over y with x fixed. Stops when both
/// coordinates move less than `move_tol` during a sweep.
PlanarOptimum maximize_alternating(const PlanarFn& f, const WindowFn& x_window,
                                   const WindowFn& y_window, double x0, double y0,
                                   double move_tol = 1e-6, int max_sweeps = 200);

}  // namespace cvdc
