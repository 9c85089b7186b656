#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "api.hpp"

namespace cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRootTol = 1e-10;

std::vector<cvdc_scheme> schemes(const std::string& s) {
  if (s == "both") return {CVDC_ADAPTIVE, CVDC_NON_ADAPTIVE};
  return {s == "adaptive" ? CVDC_ADAPTIVE : CVDC_NON_ADAPTIVE};
}

const char* scheme_name(cvdc_scheme s) { return s == CVDC_ADAPTIVE ? "adaptive" : "non-adaptive"; }

// One evaluation point: a series with the swept parameter applied.
struct Point {
  State state;
  Scenario sc;
  double nbar = 0.0;
};

Point make_point(const RunConfig& cfg, const Series& s, std::optional<double> value) {
  Point p;
  p.state = parse_state(cfg.state);
  p.nbar = s.nbar;
  double tau = s.tau;
  Channel a = parse_channel(s.dist_a);
  Channel b = parse_channel(s.dist_b);
  Channel post = parse_channel(s.post);
  if (value) {
    const char* name = cfg.param.c_str();
    const std::string& st = cfg.stage;
    if (st == "none") {
      if (cfg.param == "nbar") {
        p.nbar = *value;
      } else if (cfg.param == "tau") {
        tau = *value;
      } else {
        check(cvdc_state_set_param(p.state.get(), name, *value));
      }
    } else {
      if (st == "dist" || st == "dist-a" || st == "all") check(cvdc_channel_set_param(a.get(), name, *value));
      if (st == "dist" || st == "dist-b" || st == "all") check(cvdc_channel_set_param(b.get(), name, *value));
      if (st == "post" || st == "all") check(cvdc_channel_set_param(post.get(), name, *value));
    }
  }
  p.sc = make_scenario(a.get(), b.get(), post.get(), tau);
  return p;
}

cvdc_capacity_result capacity(const Point& p, cvdc_scheme scheme) {
  cvdc_capacity_result r{};
  check(cvdc_state_capacity(p.state.get(), p.sc.get(), p.nbar, scheme, &r));
  return r;
}

// -S(A|B) at the adaptive threshold energy, cached per scenario.
class EntropyThresholds {
 public:
  std::optional<double> at(const cvdc_scenario* sc) {
    double c[7];
    check(cvdc_scenario_coeffs(sc, c));
    char key[256];
    std::snprintf(key, sizeof key, "%a %a %a %a %a %a %a", c[0], c[1], c[2], c[3], c[4], c[5], c[6]);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::optional<double> v;
    cvdc_delta_sc_result r{};
    if (cvdc_delta_sc(sc, 1.0, &r) == CVDC_OK) v = r.neg_cond_entropy_th;
    cache_.emplace(key, v);
    return v;
  }

 private:
  std::map<std::string, std::optional<double>> cache_;
};

Table run_sweep(const RunConfig& cfg, bool single) {
  Table t;
  t.columns = {"series",        single ? "nbar" : cfg.param.c_str(),
               "scheme",        "feasible",
               "capacity_bits", "classical_bits",
               "advantage_bits", "r_opt",
               "sigma_opt",     "neg_cond_entropy",
               "delta_sc"};
  const bool tmsv = cfg.state == "tmsv";
  EntropyThresholds thresholds;
  for (const auto& s : effective_series(cfg)) {
    const std::size_t n = single ? 1 : cfg.range->count();
    for (std::size_t i = 0; i < n; ++i) {
      const std::optional<double> v = single ? std::nullopt : std::optional(cfg.range->at(i));
      const Point p = make_point(cfg, s, v);
      const double cl = classical_capacity(p.nbar);
      double nce = kNaN;
      double dsc = kNaN;
      if (tmsv && cvdc_negative_conditional_entropy(p.sc.get(), p.nbar, &nce) == CVDC_OK) {
        if (auto th = thresholds.at(p.sc.get())) dsc = nce - *th;
      }
      for (cvdc_scheme sch : schemes(cfg.scheme)) {
        const auto r = capacity(p, sch);
        const double cap = r.feasible ? r.capacity_bits : kNaN;
        t.rows.push_back({s.label, single ? p.nbar : *v, std::string(scheme_name(sch)),
                          static_cast<bool>(r.feasible), cap, cl, cap - cl,
                          r.feasible ? r.r_opt : kNaN, r.feasible ? r.sigma_opt : kNaN, nce, dsc});
      }
    }
  }
  return t;
}

// Errors raised inside the callback are parked here and rethrown after the
// library returns, so no exception crosses the C boundary.
struct AdvantageCtx {
  const RunConfig* cfg;
  const Series* series;
  cvdc_scheme scheme;
  std::optional<ApiError> error;
};

double advantage_cb(double x, void* user) {
  auto* ctx = static_cast<AdvantageCtx*>(user);
  try {
    const Point p = make_point(*ctx->cfg, *ctx->series, x);
    const auto r = capacity(p, ctx->scheme);
    const double cl = classical_capacity(p.nbar);
    // No feasible encoding carries no information.
    return (r.feasible ? r.capacity_bits : 0.0) - cl;
  } catch (const ApiError& e) {
    if (!ctx->error) ctx->error = e;
    return kNaN;
  }
}

Table run_threshold(const RunConfig& cfg) {
  Table t;
  t.columns = {"series", "scheme", "param", "index", "found", "threshold"};
  const Range& rg = *cfg.range;
  const std::size_t steps = std::max<std::size_t>(rg.count() - 1, 1);
  for (const auto& s : effective_series(cfg)) {
    for (cvdc_scheme sch : schemes(cfg.scheme)) {
      AdvantageCtx ctx{&cfg, &s, sch, std::nullopt};
      double roots[64];
      std::size_t count = 0;
      const cvdc_status st = cvdc_sign_change_scan(advantage_cb, &ctx, rg.lo, rg.lo + steps * rg.step,
                                                   steps, kRootTol, roots, 64, &count);
      if (ctx.error) throw *ctx.error;
      check(st);
      count = std::min<std::size_t>(count, 64);
      if (count == 0) {
        t.rows.push_back({s.label, std::string(scheme_name(sch)), cfg.param, std::uint64_t{0}, false, kNaN});
      }
      for (std::size_t i = 0; i < count; ++i) {
        t.rows.push_back({s.label, std::string(scheme_name(sch)), cfg.param, std::uint64_t{i}, true, roots[i]});
      }
    }
  }
  return t;
}

Table run_kappa(const RunConfig& cfg) {
  Table t;
  t.columns = {"series", "kappa", "feasible", "q_ad", "q_ad_noiseless", "delta_q_ad", "r_opt"};
  const Scenario clean = make_scenario(nullptr, nullptr, nullptr, 1.0);
  for (const auto& s : effective_series(cfg)) {
    const Point p = make_point(cfg, s, std::nullopt);
    const double cl = classical_capacity(p.nbar);
    for (std::size_t i = 0; i < cfg.range->count(); ++i) {
      const double k = cfg.range->at(i);
      cvdc_capacity_result noisy{}, ref{};
      check(cvdc_kappa_capacity(k, p.sc.get(), p.nbar, &noisy));
      check(cvdc_kappa_capacity(k, clean.get(), p.nbar, &ref));
      const double q = noisy.feasible ? noisy.capacity_bits - cl : kNaN;
      const double q0 = ref.feasible ? ref.capacity_bits - cl : kNaN;
      t.rows.push_back({s.label, k, static_cast<bool>(noisy.feasible), q, q0, q0 - q,
                        noisy.feasible ? noisy.r_opt : kNaN});
    }
  }
  return t;
}

Table run_holevo(const RunConfig& cfg) {
  Table t;
  t.columns = {"seed", "nbar_sender", "entanglement_bits", "holevo_bits"};
  for (const auto& s : effective_series(cfg)) {
    cvdc_samples* raw = nullptr;
    check(cvdc_holevo_scatter(s.nbar, cfg.samples, s.seed, cfg.sigma, &raw));
    const Samples samples(raw);
    const std::size_t n = cvdc_samples_count(samples.get());
    for (std::size_t i = 0; i < n; ++i) {
      cvdc_pure_sample ps{};
      check(cvdc_samples_get(samples.get(), i, &ps));
      t.rows.push_back({ps.seed, ps.nbar_sender, ps.entanglement_bits, ps.holevo_bits});
    }
    cvdc_scatter_summary sum{};
    check(cvdc_samples_summary(samples.get(), &sum));
    nlohmann::ordered_json j;
    j["series"] = s.label;
    j["nbar"] = s.nbar;
    j["seed"] = s.seed;
    j["rank_correlation"] = sum.rank_correlation;
    j["slope"] = sum.slope;
    j["intercept"] = sum.intercept;
    j["monotonicity_violations"] = sum.monotonicity_violations;
    t.summary.push_back(std::move(j));
  }
  return t;
}

}  // namespace

Table run(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "capacity") return run_sweep(cfg, true);
  if (c == "sweep") return run_sweep(cfg, false);
  if (c == "threshold") return run_threshold(cfg);
  if (c == "kappa-scan") return run_kappa(cfg);
  if (c == "holevo-scatter") return run_holevo(cfg);
  throw UsageError("command '" + c + "' has no runner");
}

Table verify(bool& passed) {
  Table t;
  t.columns = {"check", "value", "target", "tolerance", "pass"};
  passed = true;
  auto add = [&](const char* name, double v, double target, double tol) {
    const bool ok = std::abs(v - target) <= tol;
    passed = passed && ok;
    t.rows.push_back({std::string(name), v, target, tol, ok});
  };
  auto threshold_of = [](RunConfig cfg) {
    cfg = resolve(cfg);
    const Table r = run_threshold(cfg);
    return std::get<bool>(r.rows.front()[4]) ? std::get<double>(r.rows.front()[5]) : kNaN;
  };

  RunConfig cap;
  cap.command = "capacity";
  cap = resolve(cap);
  const Table ct = run_sweep(cap, true);
  add("tmsv capacity nbar=30 (bits)", std::get<double>(ct.rows[0][4]), std::log2(931.0), 1e-9);

  RunConfig amp;
  amp.command = "threshold";
  amp.param = "s";
  amp.stage = "dist";
  amp.dist_a = amp.dist_b = "amplifier";
  add("amplifier distribution s_th adaptive", threshold_of(amp), 0.467, 0.005);

  RunConfig energy;
  energy.command = "threshold";
  energy.param = "nbar";
  energy.range = Range{0.1, 30, 0.1};
  const double n_th = threshold_of(energy);
  add("noiseless threshold energy", n_th, 1.883, 1e-3);

  const Scenario clean = make_scenario(nullptr, nullptr, nullptr, 1.0);
  cvdc_delta_sc_result d{};
  check(cvdc_delta_sc(clean.get(), std::isnan(n_th) ? 1.0 : n_th, &d));
  add("delta S_c at threshold energy", d.delta_sc, 0.0, 1e-6);
  add("-S(A|B) at threshold energy", d.neg_cond_entropy_th, 1.717, 1e-3);
  return t;
}

}  // namespace cli
