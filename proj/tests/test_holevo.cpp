#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "cvdc/error.hpp"
#include "cvdc/families.hpp"
#include "cvdc/holevo.hpp"
#include "oracles.hpp"

using namespace cvdc;
using doctest::Approx;

namespace {

TwoModeState tmsv_state(double r) {
  TwoModeState st;
  st.cov = tmsv(r).covariance();
  return st;
}

}  // namespace

TEST_CASE("holevo quantity of simple states") {
  CHECK(holevo_pure(TwoModeState::vacuum(), 0.0) == 0.0);
  CHECK(holevo_pure(TwoModeState::vacuum(), 1.0) == Approx(oracle::s_bits(5.0)).epsilon(1e-12));
  CHECK(std::abs(holevo_pure(tmsv_state(0.9), 0.0)) < 1e-9);

  // TMSV with sender block inflated by 4 sigma^2: radicals from the two invariants.
  for (double r : {0.3, 1.0, 1.8}) {
    const double a = std::cosh(2 * r), b = std::sinh(2 * r), a4 = a + 4.0;
    const double delta = a4 * a4 + a * a - 2 * b * b;
    const double det = (a4 * a - b * b) * (a4 * a - b * b);
    const double disc = std::sqrt(delta * delta - 4 * det);
    const double np = std::sqrt((delta + disc) / 2), nm = std::sqrt((delta - disc) / 2);
    CHECK(holevo_pure(tmsv_state(r), 1.0) == Approx(oracle::s_bits(np) + oracle::s_bits(nm)).epsilon(1e-10));
  }

  TwoModeState mixed;
  mixed.cov = 2.0 * Mat4::Identity();
  try {
    holevo_pure(mixed, 1.0);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
  }
  CHECK_THROWS_AS(entanglement_pure(mixed), Error);
  CHECK_THROWS_AS(holevo_pure(TwoModeState::vacuum(), -1.0), Error);
}

TEST_CASE("entanglement of pure states") {
  CHECK(entanglement_pure(TwoModeState::vacuum()) == 0.0);
  CHECK(entanglement_pure(tmsv_state(0.5)) == Approx(oracle::s_bits(std::cosh(1.0))).epsilon(1e-12));
  CHECK(entanglement_pure(pure_class_state(3.7)) == Approx(oracle::s_bits(3.7)).epsilon(1e-12));

  // Local symplectic transforms leave the entanglement unchanged.
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto st = random_pure(20.0, 1000 + i);
    Mat4 loc = oracle::local(oracle::rotation(3 * u(gen)) * oracle::squeeze(u(gen)),
                             oracle::rotation(3 * u(gen)) * oracle::squeeze(u(gen)));
    TwoModeState moved;
    moved.cov = loc * st.cov * loc.transpose();
    moved.cov = 0.5 * (moved.cov + moved.cov.transpose());
    CHECK(std::abs(entanglement_pure(moved) - entanglement_pure(st)) < 1e-8);
  }
}

TEST_CASE("holevo quantity vanishes without encoding") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CHECK(std::abs(holevo_pure(random_pure(10.0, seed), 0.0)) < 1e-8);
  }
}

TEST_CASE("scatter study") {
  const auto samples = scatter_study(30.0, 2000, 5);
  REQUIRE(samples.size() == 2000);
  for (std::size_t i = 1; i < samples.size(); ++i) {
    CHECK(samples[i].entanglement_bits >= samples[i - 1].entanglement_bits);
  }
  for (const auto& s : samples) {
    CHECK(s.nbar_sender == 34.0);
    CHECK(s.holevo_bits >= 0.0);
    CHECK(s.entanglement_bits >= 0.0);
  }
  const auto m = summarize(samples);
  CHECK(m.monotonicity_violations == 0);
  CHECK(std::abs(m.rank_correlation - 1.0) < 1e-6);
  CHECK(m.slope > 0.0);

  // Same seed: identical output.
  const auto again = scatter_study(30.0, 2000, 5);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(again[i].seed == samples[i].seed);
    CHECK(again[i].holevo_bits == samples[i].holevo_bits);
  }

  // A larger budget lifts the curve at equal entanglement.
  const auto low = tmsv_state(0.8);
  const double e = entanglement_pure(low);
  CHECK(e > 0.0);
  const auto s30 = scatter_study(30.0, 500, 1);
  const auto s50 = scatter_study(50.0, 500, 1);
  auto interp = [](const std::vector<PureStateSample>& v, double x) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].entanglement_bits >= x) {
        const double t = (x - v[i - 1].entanglement_bits) /
                         (v[i].entanglement_bits - v[i - 1].entanglement_bits);
        return v[i - 1].holevo_bits + t * (v[i].holevo_bits - v[i - 1].holevo_bits);
      }
    }
    return v.back().holevo_bits;
  };
  const double lo = std::max(s30.front().entanglement_bits, s50.front().entanglement_bits);
  const double hi = std::min(s30.back().entanglement_bits, s50.back().entanglement_bits);
  for (int k = 1; k < 10; ++k) {
    const double x = lo + (hi - lo) * k / 10.0;
    CHECK(interp(s50, x) > interp(s30, x));
  }
  CHECK_THROWS_AS(scatter_study(30.0, 1, 0), Error);
}

TEST_CASE("rank correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> y{2, 4, 9, 16, 100};
  CHECK(rank_correlation(x, y) == Approx(1.0));
  const std::vector<double> z{5, 4, 3, 2, 1};
  CHECK(rank_correlation(x, z) == Approx(-1.0));
  const std::vector<double> ties{1, 1, 2, 2, 3};
  CHECK(rank_correlation(ties, ties) == Approx(1.0));

  // Two samples with the same covariance give equal pairs.
  PureStateSample a{tmsv_state(0.4), 34.0, 0, 0, 0};
  a.holevo_bits = holevo_pure(a.state, 1.0);
  a.entanglement_bits = entanglement_pure(a.state);
  PureStateSample b = a;
  b.seed = 1;
  CHECK(a.holevo_bits == b.holevo_bits);
  CHECK(a.entanglement_bits == b.entanglement_bits);
}
