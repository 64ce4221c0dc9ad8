#include "qgossip/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qgossip/config.hpp"
#include "qgossip/csv.hpp"
#include "qgossip/error.hpp"
#include "qgossip/experiments.hpp"
#include "qgossip/sim.hpp"

namespace qgossip {

namespace {

namespace fs = std::filesystem;

struct Invocation {
  std::string command;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
};

Config command_defaults(const std::string& command) {
  if (command == "fig1") {
    return Config::parse(
        "sizes = 10,20,30,40,50,60,70,80,90,100\n"
        "trials = 1000\nintervals = 0:20,0:100\nseed = 1\nthreads = 1\n");
  }
  if (command == "fig2") {
    return Config::parse(
        "topology = geometric\nn = 20\nradius = 0.5\ntrials = 10\nsteps = 4000\n"
        "init = uniform:-100:100\nquantizer = prob\nseed = 1\n");
  }
  if (command == "covariance") {
    return Config::parse("topology = complete\nn = 5\nsteps = 500\nseed = 1\n");
  }
  Config cfg = Config::parse(
      "topology = complete\nn = 10\nrule = compensating\nquantizer = det\n"
      "init = uniform:-100:100\nseed = 1\n");
  if (command == "batch") cfg.merge(Config::parse("trials = 100\nthreads = 1\n"));
  if (command == "shadow") {
    cfg.merge(Config::parse("topology = ring\nmax_steps = 10000\ntrials = 1\n"));
  }
  return cfg;
}

Config effective_config(const Invocation& inv) {
  Config cfg = command_defaults(inv.command);
  if (!inv.config_path.empty()) cfg.merge(Config::load(inv.config_path));
  for (const auto& o : inv.overrides) cfg.apply_override(o);
  if (inv.seed) cfg.set("seed", std::to_string(*inv.seed));
  return cfg;
}

/// Where CSV goes: the --out file, or `out` when no path was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
    if (path_.empty()) return;
    const fs::path parent = fs::path(path_).parent_path();
    if (!parent.empty() && !fs::is_directory(parent)) {
      throw ConfigError("output directory '" + parent.string() + "' does not exist");
    }
    file_.open(path_, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot write '" + path_ + "'");
  }

  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
  bool to_file() const { return !path_.empty(); }

  void write_sidecar(const Config& cfg, const std::string& command) {
    if (path_.empty()) return;
    std::ofstream side(path_ + ".effective.cfg", std::ios::binary);
    if (!side) throw std::runtime_error("cannot write '" + path_ + ".effective.cfg'");
    side << "# qgossip " << command << "\n" << cfg.to_text();
    if (command == "fig1") side << "# init intervals are a local default, not taken from data\n";
    if (command == "fig2") side << "# geometric radius is a local default, not taken from data\n";
    file_.flush();
    if (!file_) throw std::runtime_error("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostream& fallback_;
  std::ofstream file_;
};

std::string opt_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("-");
}

std::string opt_text(const std::optional<double>& v) {
  return v ? fmt::format("{:.6g}", *v) : std::string("-");
}

std::ostream& summary_stream(const Sink& sink, std::ostream& out, std::ostream& err) {
  return sink.to_file() ? out : err;
}

int cmd_run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(inv);
  TrialConfig tc = trial_config_from(cfg);
  tc.record_trace = true;
  Sink sink(inv.out_path, out);
  const Graph g = build_graph(tc.graph, tc.seed);
  const TrialResult r = run_trial(g, tc, tc.seed);
  write_trace_csv(sink.stream(), r.trace);
  sink.write_sidecar(cfg, inv.command);
  fmt::print(summary_stream(sink, out, err),
             "run: rule={} quantizer={} N={} converged={} t_con={} t_all={} alpha={} z={} "
             "max_dev={:.6g} steps={}\n",
             rule_name(tc.rule), quantizer_name(tc.quantizer), g.n_nodes(),
             r.converged ? "yes" : "no", opt_text(r.t_con), opt_text(r.t_all),
             opt_text(r.alpha), opt_text(r.z), r.max_dev, r.steps_run);
  return 0;
}

int cmd_batch(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(inv);
  const TrialConfig tc = trial_config_from(cfg);
  const std::size_t trials = cfg.get_size("trials", 100);
  const std::size_t threads = cfg.get_size("threads", 1);
  Sink sink(inv.out_path, out);
  const BatchResult b = run_batch(tc, trials, threads);
  write_batch_csv(sink.stream(), b.trials);
  sink.write_sidecar(cfg, inv.command);
  const BatchSummary& s = b.summary;
  fmt::print(summary_stream(sink, out, err),
             "batch: trials={} converged={} t_con_mean={:.6g} t_con_max={:.6g} z_mean={:.6g} "
             "z_std={:.6g} max_dev_max={:.6g}\n",
             s.trials, s.converged, s.t_con.mean, s.t_con.max, s.z.mean, s.z.std,
             s.max_dev.max);
  return 0;
}

int cmd_fig1(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(inv);
  Fig1Options opt;
  opt.sizes = cfg.get_size_list("sizes", opt.sizes);
  opt.trials = cfg.get_size("trials", opt.trials);
  opt.intervals = cfg.get_intervals("intervals", opt.intervals);
  opt.seed = cfg.get_u64("seed", opt.seed);
  opt.threads = cfg.get_size("threads", opt.threads);
  opt.max_steps = cfg.get_size("max_steps", 0);
  Sink sink(inv.out_path, out);
  const auto rows = run_fig1(opt);
  write_fig1_csv(sink.stream(), rows);
  sink.write_sidecar(cfg, inv.command);
  fmt::print(summary_stream(sink, out, err), "fig1: rows={} trials={}\n", rows.size(),
             opt.trials);
  return 0;
}

int cmd_fig2(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(inv);
  Fig2Options opt;
  opt.graph = graph_spec_from(cfg);
  opt.trials = cfg.get_size("trials", opt.trials);
  opt.steps = cfg.get_size("steps", opt.steps);
  opt.seed = cfg.get_u64("seed", opt.seed);
  const TrialConfig tc = trial_config_from(cfg);
  opt.init = tc.init;
  opt.quantizer = tc.quantizer;
  Sink sink(inv.out_path, out);
  const auto rows = run_fig2(opt);
  write_fig2_csv(sink.stream(), rows);
  sink.write_sidecar(cfg, inv.command);
  const Fig2Row& last = rows.back();
  fmt::print(summary_stream(sink, out, err),
             "fig2: steps={} final standard={:.6g} totally={:.6g} partially={:.6g} "
             "compensating={:.6g}\n",
             last.step, last.standard, last.totally, last.partially, last.compensating);
  return 0;
}

int cmd_covariance(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(inv);
  const GraphSpec spec = graph_spec_from(cfg);
  const std::size_t steps = cfg.get_size("steps", 500);
  const std::uint64_t seed = cfg.get_u64("seed", 1);
  Sink sink(inv.out_path, out);
  const auto rows = run_covariance(spec, steps, seed);
  write_covariance_csv(sink.stream(), rows);
  sink.write_sidecar(cfg, inv.command);
  fmt::print(summary_stream(sink, out, err),
             "covariance: steps={} frobenius_residual={:.6g} trace={:.6g}\n", rows.back().step,
             rows.back().frobenius_residual, rows.back().trace);
  return 0;
}

int cmd_shadow(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Config cfg = effective_config(inv);
  const TrialConfig tc = trial_config_from(cfg);
  const auto map = shadow_map(tc.rule, tc.quantizer);
  if (!map) {
    throw ConfigError("no symbolic map for rule '" + rule_name(tc.rule) + "' with quantizer '" +
                      quantizer_name(tc.quantizer) + "'");
  }
  const std::size_t trials = cfg.get_size("trials", 1);
  if (trials == 0) throw ConfigError("trials must be >= 1");
  Sink sink(inv.out_path, out);
  const Graph g = build_graph(tc.graph, tc.seed);
  std::ostream& csv = sink.stream();
  csv << "trial,seed,ok,steps_checked,first_mismatch\n";
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = derive_seed(tc.seed, i);
    const ShadowResult r = shadow_trial(g, tc, seed);
    if (!r.ok) ++mismatches;
    csv << i << ',' << seed << ',' << (r.ok ? 1 : 0) << ',' << r.steps_checked << ','
        << (r.first_mismatch ? std::to_string(*r.first_mismatch) : std::string()) << '\n';
  }
  sink.write_sidecar(cfg, inv.command);
  static const char* const names[] = {"G1", "G2", "G3", "G4", "G5"};
  fmt::print(summary_stream(sink, out, err), "shadow: map={} trials={} mismatches={}\n",
             names[static_cast<int>(*map)], trials, mismatches);
  return mismatches == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantized gossip consensus simulator"};
  app.require_subcommand(1);

  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"run", "single trial; CSV trace"},
      {"batch", "seeded batch of trials; per-trial CSV"},
      {"fig1", "consensus deviation versus N on complete graphs"},
      {"fig2", "mean squared distance versus time for the four rules"},
      {"covariance", "auxiliary covariance recursion"},
      {"shadow", "replay the symbolic dynamics next to the exact state"},
  };
  std::uint64_t seed_value = 0;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", inv.config_path, "flat key = value file");
    sub->add_option("--out", inv.out_path, "CSV output path (default: stdout)");
    sub->add_option("--seed", seed_value, "master seed");
    sub->add_option("overrides", inv.overrides, "key=value settings");
    sub->callback([&inv, sub, &seed_value, name = name] {
      inv.command = name;
      if (sub->count("--seed") > 0) inv.seed = seed_value;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  static const std::map<std::string, std::function<int(const Invocation&, std::ostream&,
                                                         std::ostream&)>>
      handlers = {{"run", cmd_run},           {"batch", cmd_batch},   {"fig1", cmd_fig1},
                  {"fig2", cmd_fig2},         {"covariance", cmd_covariance},
                  {"shadow", cmd_shadow}};
  try {
    return handlers.at(inv.command)(inv, out, err);
  } catch (const ConfigError& e) {
    fmt::print(err, "qgossip: error: {}\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "qgossip: error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(err, "qgossip: error: {}\n", e.what());
    return 1;
  }
}

}  // namespace qgossip
