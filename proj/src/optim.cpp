#include "cvdc/optim.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "cvdc/error.hpp"

namespace cvdc {

namespace {

double checked(const ScalarFn& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os.precision(17);
    os << "objective is not finite at x = " << x;
    throw Error(ErrorCode::kNonFinite, os.str());
  }
  return v;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

Bracket::Bracket(double lo_, double hi_, double tol_) : lo(lo_), hi(hi_), tol(tol_) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kDomain, "bracket needs finite lo < hi");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::kDomain, "bracket tolerance must be positive");
}

ScalarOptimum maximize_scalar(const ScalarFn& f, const Bracket& b) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = b.lo;
  double c = b.hi;
  ScalarOptimum best{a, checked(f, a)};
  auto consider = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };
  consider(c, checked(f, c));

  double x1 = c - kInvPhi * (c - a);
  double x2 = a + kInvPhi * (c - a);
  double f1 = checked(f, x1);
  double f2 = checked(f, x2);
  consider(x1, f1);
  consider(x2, f2);
  while (c - a > b.tol) {
    if (f1 >= f2) {
      c = x2;
      x2 = x1;
      f2 = f1;
      x1 = c - kInvPhi * (c - a);
      f1 = checked(f, x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (c - a);
      f2 = checked(f, x2);
      consider(x2, f2);
    }
  }
  const double mid = 0.5 * (a + c);
  consider(mid, checked(f, mid));
  return best;
}

ScalarOptimum maximize_scalar_scanned(const ScalarFn& f, const Bracket& b, std::size_t coarse) {
  if (coarse < 3) return maximize_scalar(f, b);
  const double h = (b.hi - b.lo) / static_cast<double>(coarse - 1);
  std::size_t best_i = 0;
  double best_v = checked(f, b.lo);
  for (std::size_t i = 1; i < coarse; ++i) {
    const double v = checked(f, i + 1 == coarse ? b.hi : b.lo + h * static_cast<double>(i));
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double lo = best_i == 0 ? b.lo : b.lo + h * static_cast<double>(best_i - 1);
  const double hi = best_i + 1 >= coarse ? b.hi : b.lo + h * static_cast<double>(best_i + 1);
  return maximize_scalar(f, Bracket(lo, hi, b.tol));
}

ScalarOptimum polish_maximum(const ScalarFn& f, const ScalarOptimum& opt, const Bracket& b,
                             double width, double step) {
  const double lo = std::max(b.lo + 2.0 * step, opt.x - width);
  const double hi = std::min(b.hi - 2.0 * step, opt.x + width);
  if (!(hi > lo)) return opt;
  // Five-point stencil (scaled by 12 step); its h^4 error stays below the
  // rounding noise of the objective for step ~ 1e-3.
  auto slope = [&](double x) {
    return checked(f, x - 2.0 * step) - 8.0 * checked(f, x - step) + 8.0 * checked(f, x + step) -
           checked(f, x + 2.0 * step);
  };
  const double s_lo = slope(lo);
  const double s_hi = slope(hi);
  if (!(s_lo > 0.0 && s_hi < 0.0)) return opt;
  const double x = find_root_bisect(slope, Bracket(lo, hi, 1e-14 + 4e-16 * std::abs(opt.x)));
  const double v = checked(f, x);
  // Values within rounding of each other are ties; prefer the stationary point.
  if (v + 1e-12 * (1.0 + std::abs(v)) < opt.value) return opt;
  return {x, v};
}

double find_root_bisect(const ScalarFn& f, const Bracket& b) {
  auto eval = [&f](double x) {
    const double v = f(x);
    if (std::isnan(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "objective is NaN at x = " << x;
      throw Error(ErrorCode::kNonFinite, os.str());
    }
    return v;
  };
  double a = b.lo;
  double c = b.hi;
  double fa = eval(a);
  double fc = eval(c);
  if (fa == 0.0) return a;
  if (fc == 0.0) return c;
  if (sign_of(fa) == sign_of(fc)) {
    std::ostringstream os;
    os << "no sign change on [" << a << ", " << c << "]";
    throw Error(ErrorCode::kBracket, os.str());
  }
  while (c - a > b.tol) {
    const double m = 0.5 * (a + c);
    if (m <= a || m >= c) break;
    const double fm = eval(m);
    if (fm == 0.0) return m;
    if (sign_of(fm) == sign_of(fa)) {
      a = m;
      fa = fm;
    } else {
      c = m;
    }
  }
  return 0.5 * (a + c);
}

std::vector<double> sign_change_scan(const ScalarFn& f, double lo, double hi, std::size_t steps,
                                     double tol) {
  if (steps < 2) throw Error(ErrorCode::kDomain, "scan needs at least 2 steps");
  if (!(hi > lo)) throw Error(ErrorCode::kDomain, "scan needs lo < hi");
  std::vector<double> roots;
  const double h = (hi - lo) / static_cast<double>(steps);
  auto grid = [&](std::size_t i) { return i == steps ? hi : lo + h * static_cast<double>(i); };
  auto eval = [&f](double x) {
    const double v = f(x);
    if (std::isnan(v)) throw Error(ErrorCode::kNonFinite, "objective is NaN during scan");
    return v;
  };
  double x_prev = grid(0);
  double f_prev = eval(x_prev);
  if (f_prev == 0.0) roots.push_back(x_prev);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double x = grid(i);
    const double v = eval(x);
    if (v == 0.0) {
      roots.push_back(x);
    } else if (f_prev != 0.0 && sign_of(v) != sign_of(f_prev)) {
      roots.push_back(find_root_bisect(f, Bracket(x_prev, x, tol)));
    }
    x_prev = x;
    f_prev = v;
  }
  return roots;
}

PlanarOptimum maximize_alternating(const PlanarFn& f, const WindowFn& x_window,
                                   const WindowFn& y_window, double x0, double y0,
                                   double move_tol, int max_sweeps) {
  double x = x0;
  double y = y0;
  double value = f(x, y);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const Bracket bx = x_window(y);
    const ScalarFn fx = [&](double t) { return f(t, y); };
    ScalarOptimum ox = polish_maximum(fx, maximize_scalar_scanned(fx, bx, 16), bx);
    const double dx = std::abs(ox.x - x);
    x = ox.x;

    const Bracket by = y_window(x);
    const ScalarFn fy = [&](double t) { return f(x, t); };
    ScalarOptimum oy = polish_maximum(fy, maximize_scalar_scanned(fy, by, 16), by);
    const double dy = std::abs(oy.x - y);
    y = oy.x;
    value = oy.value;
    if (dx < move_tol && dy < move_tol) return {x, y, value, sweep, true};
  }
  return {x, y, value, max_sweeps, false};
}

}  // namespace cvdc
