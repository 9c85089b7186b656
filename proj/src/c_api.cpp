#include "cvdc/cvdc.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "cvdc/channels.hpp"
#include "cvdc/error.hpp"
#include "cvdc/families.hpp"
#include "cvdc/holevo.hpp"
#include "cvdc/optim.hpp"
#include "cvdc/phase_space.hpp"
#include "cvdc/protocol.hpp"
#include "cvdc/spec_parse.hpp"

#ifndef CVDC_VERSION_STRING
#define CVDC_VERSION_STRING "0.0.0"
#endif

struct cvdc_channel {
  cvdc::ChannelSpec spec;
  std::optional<cvdc::GaussianChannel> raw;  // set by cvdc_channel_make
};

struct cvdc_scenario {
  cvdc::NoiseScenario sc;
};

struct cvdc_state {
  cvdc::StateSpec spec;
};

struct cvdc_samples {
  std::vector<cvdc::PureStateSample> samples;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_last_column = 0;

cvdc_status map_code(cvdc::ErrorCode code) {
  using cvdc::ErrorCode;
  switch (code) {
    case ErrorCode::kDomain: return CVDC_ERR_DOMAIN;
    case ErrorCode::kContract: return CVDC_ERR_CONTRACT;
    case ErrorCode::kUnphysical: return CVDC_ERR_UNPHYSICAL;
    case ErrorCode::kInfeasible: return CVDC_ERR_INFEASIBLE;
    case ErrorCode::kBracket: return CVDC_ERR_BRACKET;
    case ErrorCode::kThresholdNotFound: return CVDC_ERR_THRESHOLD_NOT_FOUND;
    case ErrorCode::kNonFinite: return CVDC_ERR_NON_FINITE;
    case ErrorCode::kParse: return CVDC_ERR_PARSE;
  }
  return CVDC_ERR_INTERNAL;
}

cvdc_status fail(cvdc_status st, std::string msg, std::size_t column = 0) {
  g_last_error = std::move(msg);
  g_last_column = column;
  return st;
}

template <class F>
cvdc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    g_last_column = 0;
    body();
    return CVDC_OK;
  } catch (const cvdc::ParseError& e) {
    return fail(CVDC_ERR_PARSE, e.what(), e.column());
  } catch (const cvdc::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CVDC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CVDC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CVDC_ERR_INTERNAL, "unknown exception");
  }
}

#define CVDC_REQUIRE(ptr)                                                   \
  do {                                                                      \
    if ((ptr) == nullptr) return fail(CVDC_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

cvdc::Scheme to_scheme(cvdc_scheme s) {
  if (s == CVDC_ADAPTIVE) return cvdc::Scheme::kAdaptive;
  if (s == CVDC_NON_ADAPTIVE) return cvdc::Scheme::kNonAdaptive;
  throw cvdc::Error(cvdc::ErrorCode::kDomain, "unknown scheme");
}

cvdc::GaussianChannel resolve(const cvdc_channel* ch) {
  if (ch == nullptr) return cvdc::identity_channel();
  return ch->raw ? *ch->raw : ch->spec.build();
}

void fill(const cvdc::CapacityResult& r, cvdc_capacity_result* out) {
  out->capacity_bits = r.capacity_bits;
  out->r_opt = r.r_opt;
  out->sigma_opt = r.sigma_opt;
  out->feasible = r.feasible ? 1 : 0;
  out->transcription_warning = r.transcription_warning ? 1 : 0;
}

cvdc_status copy_string(const std::string& s, char* buf, std::size_t cap, std::size_t* needed) {
  if (needed) *needed = s.size();
  if (cap > 0) {
    if (buf == nullptr) return fail(CVDC_ERR_NULL_ARGUMENT, "buf is NULL");
    const std::size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return CVDC_OK;
}

cvdc::StandardForm to_sf(const cvdc_standard_form* sf) { return {sf->a, sf->b1, sf->b2, sf->c}; }

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cvdc::CapacityResult fixed_state_result(double mi, double r, double sigma, cvdc::Scheme scheme) {
  return {mi, r, sigma, scheme, true, false};
}

cvdc::CapacityResult infeasible(double r, cvdc::Scheme scheme) {
  return {kNaN, r, kNaN, scheme, false, false};
}

// Capacity at a fixed standard-form state. The adaptive width spends the whole
// budget under the real noise; the non-adaptive one is sized for a noiseless link.
cvdc::CapacityResult standard_form_capacity(const cvdc::StandardForm& sf, double r,
                                            const cvdc::NoiseScenario& sc, double nbar,
                                            cvdc::Scheme scheme) {
  const cvdc::NoiseScenario& budget_sc =
      scheme == cvdc::Scheme::kAdaptive ? sc : cvdc::NoiseScenario::noiseless();
  double sigma = 0.0;
  try {
    sigma = cvdc::sigma_adaptive(sf, budget_sc, nbar);
  } catch (const cvdc::Error& e) {
    if (e.code() == cvdc::ErrorCode::kInfeasible) return infeasible(r, scheme);
    throw;
  }
  return fixed_state_result(cvdc::mutual_information(sf, sc, sigma), r, sigma, scheme);
}

bool is_noiseless(const cvdc::NoiseScenario& sc) {
  return sc.x1 == 1.0 && sc.y1 == 0.0 && sc.x2 == 1.0 && sc.y2 == 0.0 && sc.x3 == 1.0 &&
         sc.y3 == 0.0 && sc.tau == 1.0;
}

void require_noiseless(const cvdc::NoiseScenario& sc, const char* family) {
  if (!is_noiseless(sc)) {
    throw cvdc::Error(cvdc::ErrorCode::kDomain,
                      std::string("capacity of the ") + family + " family is noiseless-only");
  }
}

cvdc::CapacityResult state_capacity(const cvdc::StateSpec& spec, const cvdc::NoiseScenario& sc,
                                    double nbar, cvdc::Scheme scheme) {
  using cvdc::StateFamily;
  switch (spec.family) {
    case StateFamily::kTmsv: {
      const auto r = spec.get("r");
      if (!r) return cvdc::capacity(sc, nbar, scheme);
      return standard_form_capacity(cvdc::tmsv(*r), *r, sc, nbar, scheme);
    }
    case StateFamily::kKappa: {
      if (scheme != cvdc::Scheme::kAdaptive) {
        throw cvdc::Error(cvdc::ErrorCode::kDomain, "kappa family supports the adaptive scheme only");
      }
      const auto k = spec.get("k");
      if (!k) throw cvdc::Error(cvdc::ErrorCode::kParse, "state 'kappa' is missing parameter 'k'");
      const auto r = spec.get("r");
      if (!r) return cvdc::kappa_capacity(*k, sc, nbar);
      try {
        return fixed_state_result(cvdc::kappa_mutual_information(*r, *k, sc, nbar), *r, kNaN,
                                  scheme);
      } catch (const cvdc::Error& e) {
        if (e.code() == cvdc::ErrorCode::kInfeasible) return infeasible(*r, scheme);
        throw;
      }
    }
    case StateFamily::kPure: {
      const auto a = spec.get("a");
      if (!a) {
        require_noiseless(sc, "pure");
        const auto p = cvdc::pure_class_capacity(nbar);
        return {p.capacity_bits, 0.5 * std::acosh(p.a_opt), kNaN, scheme, true, false};
      }
      const double b = std::sqrt(*a * *a - 1.0);
      return standard_form_capacity({*a, b, -b, *a}, 0.5 * std::acosh(*a), sc, nbar, scheme);
    }
    case StateFamily::kDecomp: {
      require_noiseless(sc, "decomp");
      const auto r = spec.get("r");
      const auto s2 = spec.get("s2");
      if (!r && !s2) {
        const auto d = cvdc::decomp_optimum(nbar);
        return {d.mi_bits, d.r, kNaN, scheme, true, false};
      }
      if (!r || !s2) {
        throw cvdc::Error(cvdc::ErrorCode::kParse, "state 'decomp' needs both r and s2, or neither");
      }
      try {
        return fixed_state_result(cvdc::decomp_mutual_information(*r, *s2, nbar), *r, kNaN, scheme);
      } catch (const cvdc::Error& e) {
        if (e.code() == cvdc::ErrorCode::kInfeasible) return infeasible(*r, scheme);
        throw;
      }
    }
    case StateFamily::kRandom:
      break;
  }
  throw cvdc::Error(cvdc::ErrorCode::kDomain, "capacity is not defined for random states");
}

}  // namespace

extern "C" {

const char* cvdc_version(void) { return CVDC_VERSION_STRING; }

const char* cvdc_last_error(void) { return g_last_error.c_str(); }

size_t cvdc_last_error_column(void) { return g_last_column; }

const char* cvdc_status_name(cvdc_status status) {
  switch (status) {
    case CVDC_OK: return "ok";
    case CVDC_ERR_DOMAIN: return "domain";
    case CVDC_ERR_CONTRACT: return "contract";
    case CVDC_ERR_UNPHYSICAL: return "unphysical";
    case CVDC_ERR_INFEASIBLE: return "infeasible";
    case CVDC_ERR_BRACKET: return "bracket";
    case CVDC_ERR_THRESHOLD_NOT_FOUND: return "threshold-not-found";
    case CVDC_ERR_NON_FINITE: return "non-finite";
    case CVDC_ERR_PARSE: return "parse";
    case CVDC_ERR_NULL_ARGUMENT: return "null-argument";
    case CVDC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cvdc_default_env_convention(void) { return cvdc::to_string(cvdc::kDefaultEnvConvention); }

cvdc_status cvdc_channel_spec_string(const cvdc_channel* ch, char* buf, size_t cap, size_t* needed) {
  CVDC_REQUIRE(ch);
  std::string s;
  const cvdc_status st = guarded([&] {
    if (ch->raw) {
      char tmp[96];
      std::snprintf(tmp, sizeof tmp, "raw:x=%.17g,y=%.17g", ch->raw->x, ch->raw->y);
      s = tmp;
    } else {
      s = ch->spec.to_string();
    }
  });
  if (st != CVDC_OK) return st;
  return copy_string(s, buf, cap, needed);
}

cvdc_status cvdc_state_spec_string(const cvdc_state* st, char* buf, size_t cap, size_t* needed) {
  CVDC_REQUIRE(st);
  std::string s;
  const cvdc_status rc = guarded([&] { s = st->spec.to_string(); });
  if (rc != CVDC_OK) return rc;
  return copy_string(s, buf, cap, needed);
}

cvdc_status cvdc_channel_parse(const char* text, cvdc_channel** out) {
  CVDC_REQUIRE(text);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = new cvdc_channel{cvdc::parse_channel_spec(text), std::nullopt}; });
}

cvdc_status cvdc_channel_make(double x, double y, cvdc_channel** out) {
  CVDC_REQUIRE(out);
  return guarded([&] { *out = new cvdc_channel{{}, cvdc::make_channel(x, y)}; });
}

cvdc_status cvdc_channel_clone(const cvdc_channel* ch, cvdc_channel** out) {
  CVDC_REQUIRE(ch);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = new cvdc_channel(*ch); });
}

cvdc_status cvdc_channel_set_param(cvdc_channel* ch, const char* name, double value) {
  CVDC_REQUIRE(ch);
  CVDC_REQUIRE(name);
  return guarded([&] {
    if (ch->raw) throw cvdc::Error(cvdc::ErrorCode::kParse, "raw channels have no parameters");
    ch->spec = ch->spec.with(name, value);
  });
}

int cvdc_channel_accepts(const cvdc_channel* ch, const char* name) {
  if (ch == nullptr || name == nullptr || ch->raw) return 0;
  return ch->spec.accepts(name) ? 1 : 0;
}

cvdc_status cvdc_channel_coeffs(const cvdc_channel* ch, double* x, double* y) {
  CVDC_REQUIRE(ch);
  CVDC_REQUIRE(x);
  CVDC_REQUIRE(y);
  return guarded([&] {
    const auto g = resolve(ch);
    *x = g.x;
    *y = g.y;
  });
}

void cvdc_channel_free(cvdc_channel* ch) { delete ch; }

cvdc_status cvdc_scenario_create(const cvdc_channel* dist_a, const cvdc_channel* dist_b,
                                 const cvdc_channel* post, double tau, cvdc_scenario** out) {
  CVDC_REQUIRE(out);
  return guarded([&] {
    auto sc = cvdc::NoiseScenario::from_channels(resolve(dist_a), resolve(dist_b), resolve(post), tau);
    *out = new cvdc_scenario{sc};
  });
}

cvdc_status cvdc_scenario_coeffs(const cvdc_scenario* sc, double out[7]) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  const auto& s = sc->sc;
  const double v[7] = {s.x1, s.y1, s.x2, s.y2, s.x3, s.y3, s.tau};
  std::memcpy(out, v, sizeof v);
  return CVDC_OK;
}

void cvdc_scenario_free(cvdc_scenario* sc) { delete sc; }

cvdc_status cvdc_state_parse(const char* text, cvdc_state** out) {
  CVDC_REQUIRE(text);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = new cvdc_state{cvdc::parse_state_spec(text)}; });
}

cvdc_status cvdc_state_get_family(const cvdc_state* st, cvdc_state_family* out) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(out);
  *out = static_cast<cvdc_state_family>(static_cast<int>(st->spec.family));
  return CVDC_OK;
}

cvdc_status cvdc_state_param(const cvdc_state* st, const char* name, double* value, int* present) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(name);
  CVDC_REQUIRE(value);
  CVDC_REQUIRE(present);
  const auto v = st->spec.get(name);
  *present = v ? 1 : 0;
  if (v) *value = *v;
  return CVDC_OK;
}

cvdc_status cvdc_state_set_param(cvdc_state* st, const char* name, double value) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(name);
  return guarded([&] {
    // Re-parse so the family's parameter list is enforced in one place.
    std::string text = std::string(cvdc::to_string(st->spec.family)) + ":" + name + "=0";
    (void)cvdc::parse_state_spec(text);
    st->spec.params[name] = value;
  });
}

cvdc_status cvdc_state_covariance(const cvdc_state* st, double cov[16]) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(cov);
  return guarded([&] {
    const auto s = st->spec.build();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) cov[4 * i + j] = s.cov(i, j);
  });
}

cvdc_status cvdc_conditional_entropy(const cvdc_state* st, double* out) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::conditional_entropy(st->spec.build()); });
}

cvdc_status cvdc_von_neumann_entropy(const cvdc_state* st, double* out) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::von_neumann_entropy(st->spec.build().cov); });
}

cvdc_status cvdc_state_capacity(const cvdc_state* st, const cvdc_scenario* sc, double nbar,
                                cvdc_scheme scheme, cvdc_capacity_result* out) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { fill(state_capacity(st->spec, sc->sc, nbar, to_scheme(scheme)), out); });
}

void cvdc_state_free(cvdc_state* st) { delete st; }

cvdc_status cvdc_capacity(const cvdc_scenario* sc, double nbar, cvdc_scheme scheme,
                          cvdc_capacity_result* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { fill(cvdc::capacity(sc->sc, nbar, to_scheme(scheme)), out); });
}

cvdc_status cvdc_classical_capacity(double nbar, double* out) {
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::classical_capacity(nbar); });
}

cvdc_status cvdc_quantum_advantage(const cvdc_scenario* sc, double nbar, cvdc_scheme scheme,
                                   double* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::quantum_advantage(sc->sc, nbar, to_scheme(scheme)); });
}

cvdc_status cvdc_threshold_energy(const cvdc_scenario* sc, cvdc_scheme scheme, double lo,
                                  double hi, double tol, double* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::threshold_energy(sc->sc, to_scheme(scheme), lo, hi, tol); });
}

cvdc_status cvdc_negative_conditional_entropy(const cvdc_scenario* sc, double nbar, double* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::negative_conditional_entropy(sc->sc, nbar); });
}

cvdc_status cvdc_delta_sc(const cvdc_scenario* sc, double nbar, cvdc_delta_sc_result* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] {
    const auto d = cvdc::delta_sc(sc->sc, nbar);
    *out = {d.delta_sc, d.neg_cond_entropy, d.neg_cond_entropy_th, d.nbar_threshold};
  });
}

cvdc_status cvdc_mutual_information(const cvdc_standard_form* sf, const cvdc_scenario* sc,
                                    double sigma, double* out) {
  CVDC_REQUIRE(sf);
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::mutual_information(to_sf(sf), sc->sc, sigma); });
}

cvdc_status cvdc_sigma_adaptive(const cvdc_standard_form* sf, const cvdc_scenario* sc, double nbar,
                                double* out) {
  CVDC_REQUIRE(sf);
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::sigma_adaptive(to_sf(sf), sc->sc, nbar); });
}

cvdc_status cvdc_kappa_capacity(double kappa, const cvdc_scenario* sc, double nbar,
                                cvdc_capacity_result* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { fill(cvdc::kappa_capacity(kappa, sc->sc, nbar), out); });
}

cvdc_status cvdc_kappa_mutual_information(double r, double kappa, const cvdc_scenario* sc,
                                          double nbar, double* out) {
  CVDC_REQUIRE(sc);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::kappa_mutual_information(r, kappa, sc->sc, nbar); });
}

cvdc_status cvdc_pure_class_capacity(double nbar, double* a_opt, double* capacity_bits) {
  CVDC_REQUIRE(a_opt);
  CVDC_REQUIRE(capacity_bits);
  return guarded([&] {
    const auto p = cvdc::pure_class_capacity(nbar);
    *a_opt = p.a_opt;
    *capacity_bits = p.capacity_bits;
  });
}

cvdc_status cvdc_decomp_optimum(double nbar, cvdc_decomp_result* out) {
  CVDC_REQUIRE(out);
  return guarded([&] {
    const auto d = cvdc::decomp_optimum(nbar);
    *out = {d.r, d.s2, d.mi_bits, d.residual_r, d.residual_s2, d.sweeps, d.converged ? 1 : 0};
  });
}

cvdc_status cvdc_holevo_pure(const cvdc_state* st, double sigma, double* out) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::holevo_pure(st->spec.build(), sigma); });
}

cvdc_status cvdc_entanglement_pure(const cvdc_state* st, double* out) {
  CVDC_REQUIRE(st);
  CVDC_REQUIRE(out);
  return guarded([&] { *out = cvdc::entanglement_pure(st->spec.build()); });
}

cvdc_status cvdc_holevo_scatter(double nbar, size_t n_samples, uint64_t seed, double sigma,
                                cvdc_samples** out) {
  CVDC_REQUIRE(out);
  return guarded([&] { *out = new cvdc_samples{cvdc::scatter_study(nbar, n_samples, seed, sigma)}; });
}

size_t cvdc_samples_count(const cvdc_samples* s) { return s ? s->samples.size() : 0; }

cvdc_status cvdc_samples_get(const cvdc_samples* s, size_t i, cvdc_pure_sample* out) {
  CVDC_REQUIRE(s);
  CVDC_REQUIRE(out);
  if (i >= s->samples.size()) return fail(CVDC_ERR_DOMAIN, "sample index out of range");
  const auto& p = s->samples[i];
  *out = {p.seed, p.nbar_sender, p.entanglement_bits, p.holevo_bits};
  return CVDC_OK;
}

cvdc_status cvdc_samples_summary(const cvdc_samples* s, cvdc_scatter_summary* out) {
  CVDC_REQUIRE(s);
  CVDC_REQUIRE(out);
  return guarded([&] {
    const auto m = cvdc::summarize(s->samples);
    *out = {m.rank_correlation, m.slope, m.intercept, m.monotonicity_violations};
  });
}

void cvdc_samples_free(cvdc_samples* s) { delete s; }

cvdc_status cvdc_find_root(cvdc_scalar_fn f, void* user, double lo, double hi, double tol,
                           double* out) {
  CVDC_REQUIRE(f);
  CVDC_REQUIRE(out);
  return guarded([&] {
    *out = cvdc::find_root_bisect([&](double x) { return f(x, user); }, cvdc::Bracket(lo, hi, tol));
  });
}

cvdc_status cvdc_sign_change_scan(cvdc_scalar_fn f, void* user, double lo, double hi, size_t steps,
                                  double tol, double* roots, size_t cap, size_t* count) {
  CVDC_REQUIRE(f);
  CVDC_REQUIRE(count);
  if (cap > 0) CVDC_REQUIRE(roots);
  return guarded([&] {
    const auto found = cvdc::sign_change_scan([&](double x) { return f(x, user); }, lo, hi, steps, tol);
    *count = found.size();
    for (std::size_t i = 0; i < found.size() && i < cap; ++i) roots[i] = found[i];
  });
}

cvdc_status cvdc_maximize(cvdc_scalar_fn f, void* user, double lo, double hi, double tol, double* x,
                          double* value) {
  CVDC_REQUIRE(f);
  CVDC_REQUIRE(x);
  CVDC_REQUIRE(value);
  return guarded([&] {
    const cvdc::Bracket b(lo, hi, tol);
    auto g = [&](double v) { return f(v, user); };
    auto best = cvdc::polish_maximum(g, cvdc::maximize_scalar_scanned(g, b, 32), b);
    *x = best.x;
    *value = best.value;
  });
}

}  // extern "C"
