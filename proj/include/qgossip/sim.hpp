#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgossip/dynamics.hpp"
#include "qgossip/graph.hpp"
#include "qgossip/quantize.hpp"
#include "qgossip/symbolic.hpp"

namespace qgossip {

enum class Topology { Complete, Ring, Grid, Geometric };

Topology parse_topology(std::string_view text);
std::string topology_name(Topology t);

struct GraphSpec {
  Topology topology = Topology::Complete;
  std::size_t n = 10;     // ignored for grids
  std::size_t rows = 0;   // grids only
  std::size_t cols = 0;
  double radius = 0.5;    // geometric only
  std::string edge_probs;  // empty: uniform; otherwise a CSV path
};

/// Geometric graphs draw positions from Rng(graph_seed(seed)).
Graph build_graph(const GraphSpec& spec, std::uint64_t seed);

struct TrialConfig {
  GraphSpec graph;
  Rule rule = Rule::Compensating;
  QuantizerSpec quantizer;
  InitSpec init;
  std::uint64_t seed = 1;
  std::size_t max_steps = 0;  // 0: default_max_steps(graph)
  bool record_trace = false;
  std::size_t trace_stride = 1;
  /// When false the trial keeps running to max_steps after convergence and
  /// records how the state behaves inside the limit set.
  bool stop_at_convergence = true;
  /// Recompute the exact average after every step and keep the worst drift.
  bool track_average = false;

  /// Throws std::invalid_argument on trace_stride == 0 or a bad quantizer.
  void validate() const;
};

/// 50 N |E| ln N, at least 1000.
std::size_t default_max_steps(const Graph& g);

struct TraceRow {
  std::size_t step = 0;
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;
  double mse = 0.0;  // (1/N) ||x - x_ave(0) 1||^2
  double avg = 0.0;
};

struct TrialResult {
  std::uint64_t seed = 0;
  bool converged = false;
  std::optional<std::size_t> t_con;
  std::optional<std::size_t> t_all;
  std::size_t steps_run = 0;
  StateVector initial_state;
  StateVector final_state;
  double initial_average = 0.0;
  double initial_spread = 0.0;
  std::optional<double> alpha;
  std::optional<double> z;
  double max_dev = 0.0;    // ||x_final - x_ave(0) 1||_inf
  double final_mse = 0.0;  // (1/N) ||x_final - x_ave(0) 1||^2
  // Filled only when stop_at_convergence is false and the trial converged.
  double post_con_max_spread = 0.0;
  double post_con_max_dev = 0.0;
  bool left_limit_set = false;
  // Filled only when track_average is set.
  double max_average_drift = 0.0;
  std::vector<TraceRow> trace;
};

/// Called after every step with the step index (1-based), the new state and
/// the activated edge.
using StepObserver = std::function<void(std::size_t, std::span<const double>, Edge)>;

/// One trial on a prebuilt graph. The trial Rng(trial_seed) draws the initial
/// state first, then per step: edge, q_i, q_j.
TrialResult run_trial(const Graph& g, const TrialConfig& cfg, std::uint64_t trial_seed,
                      const StepObserver& observer = {});
/// Builds the graph from cfg.graph and uses cfg.seed as the trial seed.
TrialResult run_trial(const TrialConfig& cfg);

struct Stats {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 when count < 2
  double min = 0.0;
  double max = 0.0;
};

/// Statistics in input order (bit-reproducible).
Stats summarize(std::span<const double> values);

struct BatchSummary {
  std::size_t trials = 0;
  std::size_t converged = 0;
  double convergence_rate = 0.0;
  Stats t_con;    // over converged trials
  Stats z;        // over trials with a consensus value
  Stats max_dev;  // over all trials
  Stats final_mse;
};

struct BatchResult {
  BatchSummary summary;
  std::vector<TrialResult> trials;
};

/// Trial i uses derive_seed(cfg.seed, i); the graph is built once. Results do
/// not depend on `threads`.
BatchResult run_batch(const TrialConfig& cfg, std::size_t trials, std::size_t threads = 1);
BatchResult run_batch(const Graph& g, const TrialConfig& cfg, std::size_t trials,
                      std::size_t threads = 1);

struct ShadowResult {
  bool ok = true;
  std::size_t steps_checked = 0;
  std::optional<std::size_t> first_mismatch;
};

/// Symbolic map that shadows (rule, quantizer), or nullopt when there is none.
std::optional<SymbolicMap> shadow_map(Rule rule, const QuantizerSpec& q);

/// Runs the exact continuous dynamics and the symbolic map on one edge
/// sequence for max_steps steps and compares floor(2x) with n after each step.
/// Throws std::invalid_argument for pairs without a map.
ShadowResult shadow_trial(const Graph& g, const TrialConfig& cfg, std::uint64_t trial_seed);
ShadowResult shadow_trial(const TrialConfig& cfg);

}  // namespace qgossip
