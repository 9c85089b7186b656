#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "api.hpp"
#include "commands.hpp"
#include "run_config.hpp"

namespace {

enum Exit { kOk = 0, kIo = 1, kParse = 2, kNumeric = 3 };

struct Flags {
  cli::RunConfig cfg;
  std::string dist;
  std::string channel;
  std::string range;
  std::string preset;
  std::string config_file;
  bool list = false;
};

void add_scenario(CLI::App* sub, Flags& f) {
  sub->add_option("--state", f.cfg.state, "state spec, e.g. tmsv or kappa:k=0.3");
  sub->add_option("--dist-a", f.cfg.dist_a, "channel on mode A during distribution");
  sub->add_option("--dist-b", f.cfg.dist_b, "channel on mode B during distribution");
  sub->add_option("--dist", f.dist, "channel on both modes during distribution");
  sub->add_option("--post", f.cfg.post, "channel on the encoded mode");
  sub->add_option("--tau", f.cfg.tau, "detector efficiency in (0, 1]");
  sub->add_option("--nbar", f.cfg.nbar, "sender-side mean photon number");
}

void add_sweep(CLI::App* sub, Flags& f) {
  sub->add_option("--param", f.cfg.param, "swept parameter (nbar, tau, a state or channel parameter)");
  sub->add_option("--stage", f.cfg.stage, "dist|dist-a|dist-b|post|all|none");
  sub->add_option("--channel", f.channel, "channel placed at --stage");
  sub->add_option("--range", f.range, "lo:hi:step, closed at both ends");
}

void add_output(CLI::App* sub, Flags& f) {
  sub->add_option("--format", f.cfg.format, "csv|json");
  sub->add_option("--output,-o", f.cfg.output, "output file (default stdout)");
}

void print_usage_error(const cli::UsageError& e) {
  std::cerr << "cvdc: error: " << e.what() << '\n';
  if (!e.input().empty()) {
    std::cerr << "  " << e.input() << '\n';
    if (e.column() > 0) {
      std::cerr << "  " << std::string(e.column() - 1, ' ') << "^ column " << e.column() << '\n';
    }
  }
}

std::string read_first_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.rfind("# meta: ", 0) == 0) text = text.substr(0, text.find('\n'));
  return text;
}

void check_channel_flag(const std::string& text, const char* flag) {
  try {
    (void)cli::canonical_channel(text);
  } catch (const cli::ApiError& e) {
    throw cli::UsageError(std::string(flag) + ": " + e.what(), text, e.column());
  }
}

void apply_channel_flags(Flags& f) {
  if (!f.dist.empty()) {
    check_channel_flag(f.dist, "--dist");
    f.cfg.dist_a = f.cfg.dist_b = f.dist;
  }
  if (!f.channel.empty()) {
    const std::string& st = f.cfg.stage;
    if (st == "none") throw cli::UsageError("--channel needs --stage");
    check_channel_flag(f.channel, "--channel");
    if (st == "dist" || st == "dist-a" || st == "all") f.cfg.dist_a = f.channel;
    if (st == "dist" || st == "dist-b" || st == "all") f.cfg.dist_b = f.channel;
    if (st == "post" || st == "all") f.cfg.post = f.channel;
  }
  if (!f.range.empty()) f.cfg.range = cli::parse_range(f.range);
}

void resolve_output_dir(cli::RunConfig& cfg) {
  if (cfg.output.empty()) return;
  const char* dir = std::getenv("CVDC_OUTPUT_DIR");
  const std::filesystem::path p(cfg.output);
  if (dir && *dir && p.is_relative()) cfg.output = (std::filesystem::path(dir) / p).string();
}

int emit(const cli::RunConfig& cfg, const cli::Table& t) {
  std::ostringstream buf;
  if (cfg.format == "json") {
    cli::write_json(buf, cfg, t);
  } else {
    cli::write_csv(buf, cfg, t);
  }
  if (cfg.output.empty()) {
    std::cout << buf.str();
    return kOk;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  out << buf.str();
  if (!out) {
    std::cerr << "cvdc: error: cannot write " << cfg.output << '\n';
    return kIo;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-variable dense coding: capacities, thresholds and figure data"};
  app.set_version_flag("--version", std::string(cvdc_version()));
  Flags f;
  app.add_option("--config", f.config_file, "re-run the configuration stored in an earlier output");
  app.require_subcommand(0, 1);

  auto* capacity = app.add_subcommand("capacity", "capacity and quantum advantage at one point");
  add_scenario(capacity, f);
  capacity->add_option("--scheme", f.cfg.scheme, "adaptive|non-adaptive|both");
  add_output(capacity, f);

  auto* sweep = app.add_subcommand("sweep", "capacity over a parameter range");
  auto* threshold = app.add_subcommand("threshold", "zeros of the quantum advantage in a parameter");
  for (auto* sub : {sweep, threshold}) {
    add_scenario(sub, f);
    add_sweep(sub, f);
    sub->add_option("--scheme", f.cfg.scheme, "adaptive|non-adaptive|both");
    add_output(sub, f);
  }

  auto* kappa = app.add_subcommand("kappa-scan", "adaptive advantage of the kappa family");
  add_scenario(kappa, f);
  kappa->add_option("--stage", f.cfg.stage, "dist|dist-a|dist-b|post|all");
  kappa->add_option("--channel", f.channel, "channel placed at --stage");
  kappa->add_option("--range", f.range, "kappa range lo:hi:step");
  add_output(kappa, f);

  auto* holevo = app.add_subcommand("holevo-scatter", "Holevo quantity of random pure states");
  holevo->add_option("--nbar", f.cfg.nbar, "sender-side mean photon number");
  holevo->add_option("--samples", f.cfg.samples, "number of random states");
  holevo->add_option("--seed", f.cfg.seed, "seed of the first sample");
  holevo->add_option("--sigma", f.cfg.sigma, "displacement spread");
  add_output(holevo, f);

  auto* figure = app.add_subcommand("figure", "regenerate figure data from a preset");
  figure->add_option("name", f.preset, "preset name");
  figure->add_flag("--list", f.list, "list presets");
  auto* fig_samples = figure->add_option("--samples", f.cfg.samples, "samples per series (fig8)");
  add_output(figure, f);

  auto* verify = app.add_subcommand("verify", "check reference values");
  add_output(verify, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    cli::RunConfig cfg;
    if (!f.config_file.empty()) {
      if (!app.get_subcommands().empty()) throw cli::UsageError("--config replaces the subcommand");
      cfg = cli::resolve(cli::parse_meta(read_first_config(f.config_file)));
    } else if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return kParse;
    } else if (figure->parsed()) {
      if (f.list) {
        for (const auto& n : cli::preset_names()) std::cout << n << '\n';
        return kOk;
      }
      if (f.preset.empty()) throw cli::UsageError("figure needs a preset name; see --list");
      const cli::RunConfig user = f.cfg;
      cfg = cli::figure_preset(f.preset);
      cfg.format = user.format;
      cfg.output = user.output;
      if (fig_samples->count() > 0) cfg.samples = user.samples;
      resolve_output_dir(cfg);
      cfg = cli::resolve(cfg);
    } else {
      f.cfg.command = app.get_subcommands().front()->get_name();
      apply_channel_flags(f);
      // kappa-scan only uses --stage to place --channel.
      if (f.cfg.command == "kappa-scan") f.cfg.stage = "none";
      resolve_output_dir(f.cfg);
      cfg = cli::resolve(f.cfg);
    }
    if (cfg.command == "verify") {
      bool passed = false;
      const cli::Table t = cli::verify(passed);
      const int rc = emit(cfg, t);
      return rc != kOk ? rc : (passed ? kOk : kNumeric);
    }
    return emit(cfg, cli::run(cfg));
  } catch (const cli::UsageError& e) {
    print_usage_error(e);
    return kParse;
  } catch (const cli::ApiError& e) {
    std::cerr << "cvdc: error: " << cvdc_status_name(e.status()) << ": " << e.what() << '\n';
    return e.status() == CVDC_ERR_PARSE ? kParse : kNumeric;
  }
}
