#include "cvdc/spec_parse.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "cvdc/error.hpp"
#include "cvdc/families.hpp"

namespace cvdc {

namespace {

struct Field {
  std::string key;
  std::string value;
  std::size_t key_col;    // 1-based
  std::size_t value_col;  // 1-based
};

struct Tokens {
  std::string head;
  std::vector<Field> fields;
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

Tokens tokenize(std::string_view text) {
  Tokens out;
  std::size_t i = 0;
  while (i < text.size() && is_space(text[i])) ++i;
  const std::size_t head_begin = i;
  while (i < text.size() && text[i] != ':') ++i;
  std::size_t head_end = i;
  while (head_end > head_begin && is_space(text[head_end - 1])) --head_end;
  out.head = std::string(text.substr(head_begin, head_end - head_begin));
  if (out.head.empty()) throw ParseError("missing spec name", head_begin + 1);
  if (i == text.size()) return out;
  ++i;  // ':'
  if (i == text.size()) throw ParseError("expected parameters after ':'", i + 1);
  while (i <= text.size()) {
    std::size_t end = text.find(',', i);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(i, end - i);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", i + 1);
    auto trim = [](std::string_view s, std::size_t& offset) {
      while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
        ++offset;
      }
      while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
      return s;
    };
    std::size_t key_off = 0, val_off = 0;
    std::string_view key = trim(item.substr(0, eq), key_off);
    std::string_view val = trim(item.substr(eq + 1), val_off);
    if (key.empty()) throw ParseError("empty parameter name", i + 1);
    if (val.empty()) throw ParseError("empty value for '" + std::string(key) + "'", i + eq + 2);
    Field f{std::string(key), std::string(val), i + key_off + 1, i + eq + 1 + val_off + 1};
    for (const auto& prev : out.fields) {
      if (prev.key == f.key) throw ParseError("duplicate parameter '" + f.key + "'", f.key_col);
    }
    out.fields.push_back(std::move(f));
    if (end == text.size()) break;
    i = end + 1;
    if (i == text.size()) throw ParseError("trailing ','", i);
  }
  return out;
}

double to_number(const Field& f) {
  double v = 0.0;
  const char* first = f.value.data();
  const char* last = first + f.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("'" + f.value + "' is not a finite number", f.value_col);
  }
  return v;
}

std::uint64_t to_u64(const Field& f) {
  std::uint64_t v = 0;
  const char* first = f.value.data();
  const char* last = first + f.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("'" + f.value + "' is not an unsigned 64-bit integer", f.value_col);
  }
  return v;
}

const char* const kNoParams[] = {nullptr};
const char* const kAmpParams[] = {"s", "nth", nullptr};
const char* const kLossParams[] = {"theta", "nth", nullptr};
const char* const kEnvParams[] = {"gamma", "t", "nbar", nullptr};

// Shortest form that parses back to the same double.
std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string join_params(const std::map<std::string, double>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    out += out.empty() ? ":" : ",";
    out += k + "=" + format_number(v);
  }
  return out;
}

double need(const std::map<std::string, double>& params, const char* name, const std::string& what) {
  auto it = params.find(name);
  if (it == params.end()) {
    throw Error(ErrorCode::kParse, what + " is missing parameter '" + name + "'");
  }
  return it->second;
}

double opt(const std::map<std::string, double>& params, const char* name, double fallback) {
  auto it = params.find(name);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

const char* const* ChannelSpec::param_names(ChannelKind kind, std::size_t& required) {
  switch (kind) {
    case ChannelKind::kIdentity:
      required = 0;
      return kNoParams;
    case ChannelKind::kAmplifier:
      required = 1;
      return kAmpParams;
    case ChannelKind::kAttenuator:
      required = 1;
      return kLossParams;
    case ChannelKind::kEnvironmental:
      required = 3;
      return kEnvParams;
  }
  required = 0;
  return kNoParams;
}

bool ChannelSpec::accepts(const std::string& name) const {
  std::size_t required = 0;
  for (auto p = param_names(kind, required); *p; ++p) {
    if (name == *p) return true;
  }
  return false;
}

ChannelSpec ChannelSpec::with(const std::string& name, double value) const {
  if (!accepts(name)) {
    throw Error(ErrorCode::kParse, std::string("channel '") + cvdc::to_string(kind) +
                                       "' has no parameter '" + name + "'");
  }
  ChannelSpec out = *this;
  out.params[name] = value;
  return out;
}

GaussianChannel ChannelSpec::build() const {
  const std::string what = std::string("channel '") + cvdc::to_string(kind) + "'";
  switch (kind) {
    case ChannelKind::kIdentity:
      return identity_channel();
    case ChannelKind::kAmplifier:
      return amplifier_channel(need(params, "s", what), opt(params, "nth", 1.0));
    case ChannelKind::kAttenuator:
      return attenuator_channel(need(params, "theta", what), opt(params, "nth", 1.0));
    case ChannelKind::kEnvironmental:
      return environmental_channel(need(params, "gamma", what), need(params, "t", what),
                                   need(params, "nbar", what), convention);
  }
  return identity_channel();
}

std::string ChannelSpec::to_string() const {
  std::string head;
  switch (kind) {
    case ChannelKind::kIdentity: head = "identity"; break;
    case ChannelKind::kAmplifier: head = "amplifier"; break;
    case ChannelKind::kAttenuator: head = "pureloss"; break;
    case ChannelKind::kEnvironmental: head = "env"; break;
  }
  std::string out = head + join_params(params);
  if (kind == ChannelKind::kEnvironmental) {
    out += params.empty() ? ":" : ",";
    out += std::string("conv=") + cvdc::to_string(convention);
  }
  return out;
}

ChannelSpec parse_channel_spec(std::string_view text) {
  const Tokens tk = tokenize(text);
  ChannelSpec spec;
  if (tk.head == "identity" || tk.head == "none") {
    spec.kind = ChannelKind::kIdentity;
  } else if (tk.head == "amplifier" || tk.head == "amp") {
    spec.kind = ChannelKind::kAmplifier;
  } else if (tk.head == "pureloss" || tk.head == "attenuator" || tk.head == "loss") {
    spec.kind = ChannelKind::kAttenuator;
  } else if (tk.head == "env" || tk.head == "environmental") {
    spec.kind = ChannelKind::kEnvironmental;
  } else {
    throw ParseError("unknown channel '" + tk.head +
                         "' (expected identity, amplifier, pureloss, env)",
                     text.find(tk.head) + 1);
  }
  for (const auto& f : tk.fields) {
    if (spec.kind == ChannelKind::kEnvironmental && f.key == "conv") {
      if (f.value == "secIV" || f.value == "nbar1") {
        spec.convention = EnvConvention::kFullPhoton;
      } else if (f.value == "eq29" || f.value == "nbarhalf") {
        spec.convention = EnvConvention::kHalfPhoton;
      } else {
        throw ParseError("unknown convention '" + f.value + "' (expected nbar1 or nbarhalf)",
                         f.value_col);
      }
      continue;
    }
    if (!spec.accepts(f.key)) {
      throw ParseError("unknown parameter '" + f.key + "' for " + tk.head, f.key_col);
    }
    spec.params[f.key] = to_number(f);
  }
  return spec;
}

GaussianChannel parse_channel(std::string_view text) { return parse_channel_spec(text).build(); }

const char* to_string(StateFamily family) noexcept {
  switch (family) {
    case StateFamily::kTmsv: return "tmsv";
    case StateFamily::kKappa: return "kappa";
    case StateFamily::kPure: return "pure";
    case StateFamily::kDecomp: return "decomp";
    case StateFamily::kRandom: return "random";
  }
  return "?";
}

std::optional<double> StateSpec::get(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

TwoModeState StateSpec::build() const {
  const std::string what = std::string("state '") + cvdc::to_string(family) + "'";
  switch (family) {
    case StateFamily::kTmsv: {
      TwoModeState st;
      st.cov = tmsv(need(params, "r", what)).covariance();
      return st;
    }
    case StateFamily::kKappa:
      return kappa_state(need(params, "r", what), need(params, "k", what));
    case StateFamily::kPure:
      return pure_class_state(need(params, "a", what));
    case StateFamily::kDecomp:
      return decomp_state(need(params, "r", what), opt(params, "s1", 0.0), need(params, "s2", what),
                          opt(params, "theta1", 0.0), opt(params, "theta2", 0.0));
    case StateFamily::kRandom:
      if (!seed) throw Error(ErrorCode::kParse, what + " is missing parameter 'seed'");
      return random_pure(need(params, "nbar", what), *seed);
  }
  return TwoModeState::vacuum();
}

std::string StateSpec::to_string() const {
  std::string out = cvdc::to_string(family) + join_params(params);
  if (seed) out += (params.empty() ? ":" : ",") + std::string("seed=") + std::to_string(*seed);
  return out;
}

StateSpec parse_state_spec(std::string_view text) {
  const Tokens tk = tokenize(text);
  StateSpec spec;
  std::vector<std::string> allowed;
  if (tk.head == "tmsv") {
    spec.family = StateFamily::kTmsv;
    allowed = {"r"};
  } else if (tk.head == "kappa") {
    spec.family = StateFamily::kKappa;
    allowed = {"r", "k"};
  } else if (tk.head == "pure") {
    spec.family = StateFamily::kPure;
    allowed = {"a"};
  } else if (tk.head == "decomp") {
    spec.family = StateFamily::kDecomp;
    allowed = {"r", "s1", "s2", "theta1", "theta2"};
  } else if (tk.head == "random") {
    spec.family = StateFamily::kRandom;
    allowed = {"nbar"};
  } else {
    throw ParseError("unknown state '" + tk.head +
                         "' (expected tmsv, kappa, pure, decomp, random)",
                     text.find(tk.head) + 1);
  }
  for (const auto& f : tk.fields) {
    if (spec.family == StateFamily::kRandom && f.key == "seed") {
      spec.seed = to_u64(f);
      continue;
    }
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == f.key;
    if (!ok) throw ParseError("unknown parameter '" + f.key + "' for " + tk.head, f.key_col);
    spec.params[f.key] = to_number(f);
  }
  return spec;
}

}  // namespace cvdc
