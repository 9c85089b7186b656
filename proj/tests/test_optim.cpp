#include "doctest.h"

#include <cmath>
#include <limits>

#include "cvdc/error.hpp"
#include "cvdc/optim.hpp"
#include "cvdc/families.hpp"
#include "cvdc/protocol.hpp"

#include <tuple>

using namespace cvdc;
using doctest::Approx;

TEST_CASE("bracket validation") {
  CHECK_THROWS_AS(Bracket(1.0, 1.0), Error);
  CHECK_THROWS_AS(Bracket(2.0, 1.0), Error);
  CHECK_THROWS_AS(Bracket(0.0, 1.0, 0.0), Error);
}

TEST_CASE("golden section") {
  const auto q = maximize_scalar([](double x) { return -(x - 2.0) * (x - 2.0); }, Bracket(0.0, 5.0, 1e-8));
  CHECK(std::abs(q.x - 2.0) < 1e-8);

  const auto c = maximize_scalar([](double) { return 3.5; }, Bracket(-1.0, 1.0));
  CHECK(c.value == 3.5);
  CHECK(c.x >= -1.0);
  CHECK(c.x <= 1.0);

  // Maximum on the boundary.
  const auto edge = maximize_scalar([](double x) { return x; }, Bracket(0.0, 1.0));
  CHECK(edge.x == 1.0);

  // Strictly concave family: tolerance guarantee.
  for (double m = 0.1; m < 4.0; m += 0.37) {
    const auto o = maximize_scalar([m](double x) { return std::log(x) - x / m; }, Bracket(1e-3, 10.0));
    CHECK(std::abs(o.x - m) < 1e-7);
  }

  try {
    maximize_scalar([](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : x; },
                    Bracket(0.0, 1.0));
    FAIL("expected non-finite error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFinite);
  }
}

TEST_CASE("noiseless capacity is maximized at the energy-balanced squeezing") {
  const double n = 30.0;
  const auto sc = NoiseScenario::noiseless();
  const ScalarFn mi = [&](double r) {
    const StandardForm sf = tmsv(r);
    return mutual_information(sf, sc, sigma_adaptive(sf, sc, n));
  };
  const double r_max = r_max_feasible(sc, n);
  const Bracket b(0.0, r_max * (1.0 - 1e-12));
  const auto best = polish_maximum(mi, maximize_scalar_scanned(mi, b, 64), b);
  CHECK(std::abs(best.x - 0.5 * std::log(61.0)) < 1e-7);
  CHECK(best.value == Approx(std::log2(931.0)).epsilon(1e-12));
}

TEST_CASE("bisection") {
  CHECK(find_root_bisect([](double x) { return x - 1.0; }, Bracket(0.0, 2.0, 1e-12)) ==
        Approx(1.0).epsilon(1e-12));
  CHECK(find_root_bisect([](double x) { return x; }, Bracket(0.0, 2.0)) == 0.0);
  CHECK_THROWS_AS(find_root_bisect([](double x) { return x * x + 1.0; }, Bracket(-1.0, 1.0)), Error);
  try {
    find_root_bisect([](double x) { return x * x + 1.0; }, Bracket(-1.0, 1.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBracket);
  }
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(find_root_bisect([&](double x) { return x < 0.3 ? -inf : x - 0.5; }, Bracket(0.0, 1.0, 1e-10)) ==
        Approx(0.5).epsilon(1e-9));

  const auto sc = NoiseScenario::noiseless();
  const double th = find_root_bisect(
      [&](double n) { return quantum_advantage(sc, n, Scheme::kAdaptive); }, Bracket(0.5, 5.0, 1e-6));
  CHECK(std::abs(th - 1.883) < 1e-3);

  const double s_th = find_root_bisect(
      [](double s) {
        const auto a = amplifier_channel(s);
        return quantum_advantage(NoiseScenario::from_channels(a, a, identity_channel(), 1.0), 30.0,
                                 Scheme::kAdaptive);
      },
      Bracket(0.3, 0.6, 1e-6));
  CHECK(std::abs(s_th - 0.467) < 5e-3);
}

TEST_CASE("sign change scan") {
  const auto roots = sign_change_scan([](double x) { return std::sin(x); }, 0.1, 2 * M_PI - 0.1, 100, 1e-9);
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0] - M_PI) < 1e-6);

  // Exact zero on a grid point is emitted once.
  const auto grid = sign_change_scan([](double x) { return x - 0.5; }, 0.0, 1.0, 10);
  REQUIRE(grid.size() == 1);
  CHECK(grid[0] == 0.5);

  CHECK(sign_change_scan([](double) { return 1.0; }, 0.0, 1.0, 10).empty());

  for (auto [scheme, lo, hi] : {std::tuple{Scheme::kAdaptive, 0.571, 2.57},
                                std::tuple{Scheme::kNonAdaptive, 0.428, 2.713}}) {
    const auto zs = sign_change_scan(
        [scheme = scheme](double th) {
          const auto l = attenuator_channel(th);
          const double q = quantum_advantage(NoiseScenario::from_channels(l, l, identity_channel(), 1.0),
                                             30.0, scheme);
          return std::isnan(q) ? -1.0 : q;
        },
        0.0, M_PI, 200);
    REQUIRE(zs.size() == 2);
    CHECK(std::abs(zs[0] - lo) < 5e-3);
    CHECK(std::abs(zs[1] - hi) < 5e-3);
  }
}

TEST_CASE("alternating maximization of a coupled concave bowl") {
  const PlanarFn f = [](double x, double y) {
    return -(x - 1.0) * (x - 1.0) - 2.0 * (y + 0.5) * (y + 0.5) - 0.5 * (x - 1.0) * (y + 0.5);
  };
  const WindowFn wx = [](double) { return Bracket(-3.0, 3.0); };
  const WindowFn wy = [](double) { return Bracket(-3.0, 3.0); };
  const auto o = maximize_alternating(f, wx, wy, 0.0, 0.0);
  CHECK(o.converged);
  CHECK(std::abs(o.x - 1.0) < 1e-6);
  CHECK(std::abs(o.y + 0.5) < 1e-6);
  CHECK(o.sweeps <= 200);
}

TEST_CASE("determinism") {
  const ScalarFn f = [](double x) { return std::sin(3 * x) * std::exp(-x); };
  const auto a = maximize_scalar_scanned(f, Bracket(0.0, 3.0), 32);
  const auto b = maximize_scalar_scanned(f, Bracket(0.0, 3.0), 32);
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
}
