#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "api.hpp"

namespace cli {

using nlohmann::json;
using nlohmann::ordered_json;

const char* const kCommands[] = {"capacity",       "sweep",  "threshold", "kappa-scan",
                                 "holevo-scatter", "figure", "verify",    nullptr};

std::size_t Range::count() const {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double Range::at(std::size_t i) const { return lo + static_cast<double>(i) * step; }

Range parse_range(std::string_view text) {
  const std::string input(text);
  double v[3] = {0, 0, 0};
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? text.find(':', pos) : text.size();
    if (end == std::string_view::npos) {
      throw UsageError("range must be lo:hi:step", input, text.size() + 1);
    }
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, v[k]);
    if (ec != std::errc() || ptr != last || first == last || !std::isfinite(v[k])) {
      throw UsageError("bad number in range", input, pos + 1);
    }
    pos = end + 1;
  }
  if (text.find(':', text.rfind(':') + 1) != std::string_view::npos) {
    throw UsageError("range must be lo:hi:step", input, text.rfind(':') + 1);
  }
  Range r{v[0], v[1], v[2]};
  if (!(r.step > 0)) throw UsageError("range step must be positive", input, text.rfind(':') + 2);
  if (r.hi < r.lo) throw UsageError("range is empty (hi < lo)", input, 1);
  return r;
}

namespace {

bool one_of(const std::string& s, std::initializer_list<const char*> opts) {
  return std::any_of(opts.begin(), opts.end(), [&](const char* o) { return s == o; });
}

const std::map<std::string, Range>& channel_ranges() {
  static const std::map<std::string, Range> m = {
      {"s", {0, 1, 0.005}},     {"theta", {0, 3.14, 0.005}}, {"nth", {1, 5, 0.01}},
      {"gamma", {0, 1, 0.005}}, {"t", {0, 3, 0.005}},        {"nbar", {0, 3, 0.01}},
  };
  return m;
}

const std::map<std::string, Range>& scalar_ranges() {
  static const std::map<std::string, Range> m = {
      {"nbar", {0.1, 30, 0.1}}, {"tau", {0.01, 1, 0.01}},   {"r", {0, 3, 0.01}},
      {"k", {0, 0.5, 0.01}},    {"kappa", {0, 0.5, 0.01}},  {"a", {1, 30, 0.1}},
      {"s1", {-1, 1, 0.01}},    {"s2", {-1, 1, 0.01}},      {"theta1", {0, 3.14, 0.01}},
      {"theta2", {0, 3.14, 0.01}},
  };
  return m;
}

std::vector<const std::string*> stage_slots(const std::string& stage, const Series& s) {
  if (stage == "dist") return {&s.dist_a, &s.dist_b};
  if (stage == "dist-a") return {&s.dist_a};
  if (stage == "dist-b") return {&s.dist_b};
  if (stage == "post") return {&s.post};
  if (stage == "all") return {&s.dist_a, &s.dist_b, &s.post};
  return {};
}

std::string canonical(const std::string& text, const char* flag) {
  try {
    return canonical_channel(text);
  } catch (const ApiError& e) {
    throw UsageError(std::string(flag) + ": " + e.what(), text, e.column());
  }
}

void check_param(const RunConfig& cfg) {
  const auto series = effective_series(cfg);
  if (cfg.stage == "none") {
    if (cfg.param == "nbar" || cfg.param == "tau") return;
    State st = parse_state(cfg.state);
    if (cvdc_state_set_param(st.get(), cfg.param.c_str(), 0.0) != CVDC_OK) {
      throw UsageError("parameter '" + cfg.param + "' is not nbar, tau or a parameter of state '" +
                       cfg.state + "'; use --stage for channel parameters");
    }
    return;
  }
  for (const auto& s : series) {
    for (const std::string* slot : stage_slots(cfg.stage, s)) {
      Channel ch = parse_channel(*slot);
      if (!cvdc_channel_accepts(ch.get(), cfg.param.c_str())) {
        throw UsageError("channel '" + *slot + "' at stage " + cfg.stage + " has no parameter '" +
                         cfg.param + "'");
      }
    }
  }
}

}  // namespace

std::vector<Series> effective_series(const RunConfig& cfg) {
  if (!cfg.series.empty()) return cfg.series;
  Series s;
  s.label = "base";
  s.dist_a = cfg.dist_a;
  s.dist_b = cfg.dist_b;
  s.post = cfg.post;
  s.tau = cfg.tau;
  s.nbar = cfg.nbar;
  s.seed = cfg.seed;
  return {s};
}

RunConfig resolve(RunConfig cfg) {
  bool known = false;
  for (auto c = kCommands; *c; ++c) known = known || cfg.command == *c;
  if (!known || cfg.command == "figure") {
    throw UsageError("unknown command '" + cfg.command + "'");
  }
  if (!one_of(cfg.scheme, {"adaptive", "non-adaptive", "both"})) {
    throw UsageError("scheme must be adaptive, non-adaptive or both", cfg.scheme, 1);
  }
  if (!one_of(cfg.format, {"csv", "json"})) {
    throw UsageError("format must be csv or json", cfg.format, 1);
  }
  if (!one_of(cfg.stage, {"none", "dist", "dist-a", "dist-b", "post", "all"})) {
    throw UsageError("stage must be dist, dist-a, dist-b, post, all or none", cfg.stage, 1);
  }
  if (!(cfg.tau > 0 && cfg.tau <= 1)) throw UsageError("tau must lie in (0, 1]");
  if (!(cfg.nbar >= 0)) throw UsageError("nbar must be non-negative");
  if (!(cfg.sigma >= 0)) throw UsageError("sigma must be non-negative");

  try {
    cfg.state = canonical_state(cfg.state);
  } catch (const ApiError& e) {
    throw UsageError(std::string("--state: ") + e.what(), cfg.state, e.column());
  }
  cfg.dist_a = canonical(cfg.dist_a, "--dist-a");
  cfg.dist_b = canonical(cfg.dist_b, "--dist-b");
  cfg.post = canonical(cfg.post, "--post");
  for (auto& s : cfg.series) {
    s.dist_a = canonical(s.dist_a, "series dist_a");
    s.dist_b = canonical(s.dist_b, "series dist_b");
    s.post = canonical(s.post, "series post");
  }

  const std::string& cmd = cfg.command;
  if (cmd == "capacity" || cmd == "sweep" || cmd == "threshold") {
    cvdc_state_family fam{};
    check(cvdc_state_get_family(parse_state(cfg.state).get(), &fam));
    if (fam == CVDC_STATE_RANDOM) {
      throw UsageError("random states have no capacity; use holevo-scatter", cfg.state, 1);
    }
  }
  if (cmd == "sweep" || cmd == "threshold") {
    if (cfg.param.empty()) cfg.param = "nbar";
    check_param(cfg);
  } else if (cmd == "kappa-scan") {
    if (cfg.stage != "none") throw UsageError("kappa-scan sweeps kappa; --stage does not apply");
    cfg.param = "kappa";
  } else {
    cfg.param.clear();
    cfg.stage = "none";
    cfg.range.reset();
  }
  if (!cfg.param.empty() && !cfg.range) {
    const auto& table = cfg.stage == "none" ? scalar_ranges() : channel_ranges();
    auto it = table.find(cfg.param);
    if (it == table.end()) throw UsageError("no default range for '" + cfg.param + "'; pass --range");
    cfg.range = it->second;
  }
  if (cmd == "holevo-scatter" && cfg.samples < 2) throw UsageError("samples must be at least 2");

  cfg.version = cvdc_version();
  cfg.env_convention = cvdc_default_env_convention();
  return cfg;
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["version"] = c.version;
  j["env_convention"] = c.env_convention;
  j["command"] = c.command;
  j["preset"] = c.preset;
  j["state"] = c.state;
  j["dist_a"] = c.dist_a;
  j["dist_b"] = c.dist_b;
  j["post"] = c.post;
  j["tau"] = c.tau;
  j["nbar"] = c.nbar;
  j["scheme"] = c.scheme;
  j["param"] = c.param;
  j["stage"] = c.stage;
  if (c.range) {
    j["range"] = {{"lo", c.range->lo}, {"hi", c.range->hi}, {"step", c.range->step}};
  } else {
    j["range"] = nullptr;
  }
  j["format"] = c.format;
  j["output"] = c.output;
  j["seed"] = c.seed;
  j["samples"] = c.samples;
  j["sigma"] = c.sigma;
  j["series"] = ordered_json::array();
  for (const auto& s : c.series) {
    j["series"].push_back({{"label", s.label},
                           {"dist_a", s.dist_a},
                           {"dist_b", s.dist_b},
                           {"post", s.post},
                           {"tau", s.tau},
                           {"nbar", s.nbar},
                           {"seed", s.seed}});
  }
  return j;
}

RunConfig config_from_json(const json& j) {
  static const char* const keys[] = {
      "version", "env_convention", "command", "preset", "state", "dist_a",  "dist_b",
      "post",    "tau",            "nbar",    "scheme", "param", "stage",   "range",
      "format",  "output",         "seed",    "samples", "sigma", "series", nullptr};
  if (!j.is_object()) throw UsageError("metadata is not a JSON object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (auto p = keys; *p; ++p) ok = ok || k == *p;
    if (!ok) throw UsageError("unknown metadata key '" + k + "'");
  }
  RunConfig c;
  try {
    c.version = j.at("version").get<std::string>();
    c.env_convention = j.at("env_convention").get<std::string>();
    c.command = j.at("command").get<std::string>();
    c.preset = j.at("preset").get<std::string>();
    c.state = j.at("state").get<std::string>();
    c.dist_a = j.at("dist_a").get<std::string>();
    c.dist_b = j.at("dist_b").get<std::string>();
    c.post = j.at("post").get<std::string>();
    c.tau = j.at("tau").get<double>();
    c.nbar = j.at("nbar").get<double>();
    c.scheme = j.at("scheme").get<std::string>();
    c.param = j.at("param").get<std::string>();
    c.stage = j.at("stage").get<std::string>();
    if (!j.at("range").is_null()) {
      const auto& r = j.at("range");
      c.range = Range{r.at("lo").get<double>(), r.at("hi").get<double>(), r.at("step").get<double>()};
    }
    c.format = j.at("format").get<std::string>();
    c.output = j.at("output").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.samples = j.at("samples").get<std::size_t>();
    c.sigma = j.at("sigma").get<double>();
    for (const auto& s : j.at("series")) {
      c.series.push_back({s.at("label").get<std::string>(), s.at("dist_a").get<std::string>(),
                          s.at("dist_b").get<std::string>(), s.at("post").get<std::string>(),
                          s.at("tau").get<double>(), s.at("nbar").get<double>(),
                          s.at("seed").get<std::uint64_t>()});
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("metadata: ") + e.what());
  }
  return c;
}

std::string meta_line(const RunConfig& cfg) { return "# meta: " + to_json(cfg).dump(); }

RunConfig parse_meta(std::string_view text) {
  static constexpr std::string_view prefix = "# meta: ";
  const bool csv = text.substr(0, prefix.size()) == prefix;
  const std::string_view body = csv ? text.substr(prefix.size()) : text;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    const std::size_t col = (csv ? prefix.size() : 0) + e.byte;
    throw UsageError("metadata is not valid JSON", std::string(text.substr(0, text.find('\n'))), col);
  }
  if (!csv && j.is_object() && j.contains("meta")) return config_from_json(j.at("meta"));
  return config_from_json(j);
}

}  // namespace cli
