#include "cvdc/holevo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cvdc/error.hpp"
#include "cvdc/families.hpp"

namespace cvdc {

namespace {

void require_pure(const TwoModeState& state) {
  if (symplectic_eigenvalues(state.cov)[0] > 1.0 + 1e-6) {
    throw Error(ErrorCode::kDomain, "state is not pure");
  }
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) out[order[k]] = avg;
    i = j + 1;
  }
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return sxx == syy ? 1.0 : 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double holevo_pure(const TwoModeState& state, double sigma) {
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kDomain, "encoding width must be >= 0");
  require_pure(state);
  Mat4 averaged = state.cov;
  averaged(0, 0) += 4.0 * sigma * sigma;
  averaged(1, 1) += 4.0 * sigma * sigma;
  return von_neumann_entropy(averaged);
}

double entanglement_pure(const TwoModeState& state) {
  require_pure(state);
  return von_neumann_entropy(reduce_mode(state.cov, Mode::A));
}

std::vector<PureStateSample> scatter_study(double nbar, std::size_t n_samples, std::uint64_t seed,
                                           double sigma) {
  if (n_samples < 2) throw Error(ErrorCode::kDomain, "scatter study needs at least 2 samples");
  std::vector<PureStateSample> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const std::uint64_t s = seed + i;
    TwoModeState st = random_pure(nbar, s);
    const double h = holevo_pure(st, sigma);
    const double e = entanglement_pure(st);
    out.push_back({std::move(st), nbar + 4.0 * sigma * sigma, h, e, s});
  }
  std::stable_sort(out.begin(), out.end(), [](const PureStateSample& a, const PureStateSample& b) {
    return a.entanglement_bits < b.entanglement_bits;
  });
  return out;
}

double rank_correlation(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::kContract, "rank correlation needs two equal-length series (n >= 2)");
  }
  const auto rx = ranks(xs);
  const auto ry = ranks(ys);
  return pearson(rx, ry);
}

ScatterSummary summarize(std::span<const PureStateSample> samples) {
  std::vector<double> e, h;
  e.reserve(samples.size());
  h.reserve(samples.size());
  for (const auto& s : samples) {
    e.push_back(s.entanglement_bits);
    h.push_back(s.holevo_bits);
  }
  ScatterSummary out{};
  out.rank_correlation = rank_correlation(e, h);

  const double n = static_cast<double>(e.size());
  const double me = std::accumulate(e.begin(), e.end(), 0.0) / n;
  const double mh = std::accumulate(h.begin(), h.end(), 0.0) / n;
  double seh = 0.0, see = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    seh += (e[i] - me) * (h[i] - mh);
    see += (e[i] - me) * (e[i] - me);
  }
  out.slope = see > 0.0 ? seh / see : 0.0;
  out.intercept = mh - out.slope * me;

  std::vector<std::size_t> order(e.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return e[a] < e[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (h[order[i]] < h[order[i - 1]] - 1e-9) ++out.monotonicity_violations;
  }
  return out;
}

}  // namespace cvdc
