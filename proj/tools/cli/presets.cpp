#include <functional>
#include <map>

#include "api.hpp"
#include "run_config.hpp"

namespace cli {

namespace {

Series make_series(std::string label, std::string dist, std::string post, double tau = 1.0) {
  Series s;
  s.label = std::move(label);
  s.dist_a = dist;
  s.dist_b = dist;
  s.post = std::move(post);
  s.tau = tau;
  return s;
}

Series env_series(std::string label, const std::string& env) {
  return make_series(std::move(label), env, env);
}

RunConfig noise_sweep(const std::string& stage, const std::string& channel, const std::string& param,
                      Range range) {
  RunConfig c;
  c.command = "sweep";
  c.scheme = "both";
  c.stage = stage;
  c.param = param;
  c.range = range;
  if (stage == "dist") {
    c.dist_a = c.dist_b = channel;
  } else {
    c.post = channel;
  }
  return c;
}

// Q and delta S_c against sender energy, one series per channel setting.
RunConfig energy_sweep(std::vector<Series> series) {
  RunConfig c;
  c.command = "sweep";
  c.param = "nbar";
  c.range = Range{0.1, 30, 0.1};
  c.series = std::move(series);
  return c;
}

std::string env(const char* gamma, const char* nbar, const char* t = nullptr) {
  std::string out = std::string("env:gamma=") + gamma + ",nbar=" + nbar;
  if (t) out += std::string(",t=") + t;
  return out;
}

RunConfig kappa_figure() {
  RunConfig c;
  c.command = "kappa-scan";
  c.range = Range{0, 0.5, 0.01};
  const std::string e = env("0.1", "0.5", "1");
  c.series = {
      make_series("amplifier s=0.1 dist", "amplifier:s=0.1", "identity"),
      make_series("pureloss theta=0.2 post", "identity", "pureloss:theta=0.2"),
      env_series("env gamma=0.1 nbar=0.5 t=1", e),
      make_series("detector tau=0.8", "identity", "identity", 0.8),
  };
  return c;
}

const std::map<std::string, std::function<RunConfig()>>& table() {
  static const std::map<std::string, std::function<RunConfig()>> t = {
      {"fig3a", [] { return energy_sweep({make_series("noiseless", "identity", "identity")}); }},
      {"fig3b", [] { return energy_sweep({make_series("noiseless", "identity", "identity")}); }},
      {"fig4a", [] { return noise_sweep("dist", "amplifier", "s", {0, 1, 0.005}); }},
      {"fig4b", [] { return noise_sweep("dist", "pureloss", "theta", {0, 3.14, 0.005}); }},
      {"fig4c",
       [] {
         return energy_sweep({make_series("s=0.1", "amplifier:s=0.1", "identity"),
                              make_series("s=0.4", "amplifier:s=0.4", "identity")});
       }},
      {"fig4d",
       [] {
         return energy_sweep({make_series("theta=0.1", "pureloss:theta=0.1", "identity"),
                              make_series("theta=0.4", "pureloss:theta=0.4", "identity")});
       }},
      {"fig5a", [] { return noise_sweep("post", "amplifier", "s", {0, 1, 0.005}); }},
      {"fig5b", [] { return noise_sweep("post", "pureloss", "theta", {0, 3.14, 0.005}); }},
      {"fig5c",
       [] {
         return energy_sweep({make_series("s=0.1", "identity", "amplifier:s=0.1"),
                              make_series("s=0.4", "identity", "amplifier:s=0.4")});
       }},
      {"fig5d",
       [] {
         return energy_sweep({make_series("theta=0.1", "identity", "pureloss:theta=0.1"),
                              make_series("theta=0.4", "identity", "pureloss:theta=0.4")});
       }},
      {"fig6a",
       [] {
         RunConfig c;
         c.command = "sweep";
         c.param = "t";
         c.stage = "all";
         c.range = Range{0, 3, 0.005};
         c.series = {env_series("gamma=0.1", env("0.1", "0.5")), env_series("gamma=0.2", env("0.2", "0.5")),
                     env_series("gamma=0.3", env("0.3", "0.5"))};
         return c;
       }},
      {"fig6b",
       [] {
         RunConfig c;
         c.command = "sweep";
         c.param = "t";
         c.stage = "all";
         c.range = Range{0, 3, 0.005};
         c.series = {env_series("nbar=0.5", env("0.1", "0.5")), env_series("nbar=1.0", env("0.1", "1.0")),
                     env_series("nbar=1.5", env("0.1", "1.5"))};
         return c;
       }},
      {"fig6c",
       [] {
         return energy_sweep({env_series("gamma=0.1", env("0.1", "0.5", "0.5")),
                              env_series("gamma=0.3", env("0.3", "0.5", "0.5"))});
       }},
      {"fig6d",
       [] {
         return energy_sweep({env_series("nbar=0.5", env("0.1", "0.5", "0.5")),
                              env_series("nbar=1.0", env("0.1", "1.0", "0.5"))});
       }},
      {"fig7a", kappa_figure},
      {"fig7b", kappa_figure},
      {"fig8",
       [] {
         RunConfig c;
         c.command = "holevo-scatter";
         c.samples = 10000;
         for (double n : {30.0, 40.0, 50.0}) {
           Series s;
           s.label = "nbar=" + std::to_string(static_cast<int>(n));
           s.nbar = n;
           s.seed = 20240000 + static_cast<std::uint64_t>(n);
           c.series.push_back(s);
         }
         return c;
       }},
      {"homodyne-a",
       [] {
         std::vector<Series> s;
         for (const char* tau : {"1", "0.9", "0.8", "0.7"}) {
           s.push_back(make_series(std::string("tau=") + tau, "identity", "identity", std::stod(tau)));
         }
         return energy_sweep(std::move(s));
       }},
  };
  return t;
}

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : table()) out.push_back(k);
  out.push_back("homodyne-b");
  return out;
}

RunConfig figure_preset(const std::string& name) {
  const std::string key = name == "homodyne-b" ? "homodyne-a" : name;
  auto it = table().find(key);
  if (it == table().end()) {
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown preset '" + name + "'; known presets: " + list, name, 1);
  }
  RunConfig c = it->second();
  c.preset = name;
  return c;
}

}  // namespace cli
