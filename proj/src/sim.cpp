#include "qgossip/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "qgossip/error.hpp"
#include "qgossip/symbolic.hpp"

namespace qgossip {

Topology parse_topology(std::string_view text) {
  if (text == "complete") return Topology::Complete;
  if (text == "ring") return Topology::Ring;
  if (text == "grid") return Topology::Grid;
  if (text == "geometric") return Topology::Geometric;
  throw std::invalid_argument("unknown topology '" + std::string(text) + "'");
}

std::string topology_name(Topology t) {
  switch (t) {
    case Topology::Complete: return "complete";
    case Topology::Ring: return "ring";
    case Topology::Grid: return "grid";
    case Topology::Geometric: return "geometric";
  }
  throw std::invalid_argument("unknown topology");
}

Graph build_graph(const GraphSpec& spec, std::uint64_t seed) {
  Graph g = [&] {
    switch (spec.topology) {
      case Topology::Complete: return complete_graph(spec.n);
      case Topology::Ring: return ring_graph(spec.n);
      case Topology::Grid: return grid_graph(spec.rows, spec.cols);
      case Topology::Geometric: {
        Rng rng(graph_seed(seed));
        return random_geometric_graph(spec.n, spec.radius, rng);
      }
    }
    throw std::invalid_argument("unknown topology");
  }();
  if (!spec.edge_probs.empty()) g = load_edge_probs(g, spec.edge_probs);
  return g;
}

void TrialConfig::validate() const {
  if (trace_stride == 0) throw std::invalid_argument("trace_stride must be >= 1");
  quantizer.validate();
  if (init.kind == InitSpec::Kind::Uniform && !(init.lo <= init.hi)) {
    throw std::invalid_argument("uniform init needs lo <= hi");
  }
}

std::size_t default_max_steps(const Graph& g) {
  const double n = static_cast<double>(g.n_nodes());
  const double steps = 50.0 * n * static_cast<double>(g.n_edges()) * std::log(n);
  return std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(steps)));
}

namespace {

constexpr double kTolerance = 1e-9;

enum class Criterion {
  Tight,          // spread <= tolerance
  Consensus,      // all equal and integer
  SetR,           // lifted spread <= 1
  SetAThenTight,  // lifted vector in A and spread <= tolerance
  None,           // only exact integer consensus
};

Criterion criterion_for(Rule rule, const QuantizerSpec& q) {
  switch (rule) {
    case Rule::Standard: return Criterion::Tight;
    case Rule::TotallyQuantized: return Criterion::Consensus;
    case Rule::PartiallyQuantized: return q.is_random() ? Criterion::SetAThenTight : Criterion::SetR;
    case Rule::Compensating: return q.is_random() ? Criterion::None : Criterion::SetR;
  }
  return Criterion::None;
}

std::int64_t lift_one(double v) { return static_cast<std::int64_t>(std::floor(2.0 * v)); }

/// Sorted views of the state and of its lift, updated two entries per step.
class Tracker {
 public:
  Tracker(Criterion c, std::span<const double> x) : criterion_(c) {
    for (double v : x) insert(v);
  }

  void insert(double v) {
    values_.insert(v);
    ++lifts_[lift_one(v)];
  }

  void erase(double v) {
    values_.erase(values_.find(v));
    auto it = lifts_.find(lift_one(v));
    if (--it->second == 0) lifts_.erase(it);
  }

  double min() const { return *values_.begin(); }
  double max() const { return *values_.rbegin(); }

  bool satisfied() const {
    switch (criterion_) {
      case Criterion::Tight: return max() - min() <= kTolerance;
      case Criterion::Consensus: return exact_integer_consensus();
      case Criterion::SetR: return lifts_.rbegin()->first - lifts_.begin()->first <= 1;
      case Criterion::SetAThenTight:
        return lifts_.size() == 1 && parity(lifts_.begin()->first) == 0 &&
               max() - min() <= kTolerance;
      case Criterion::None: return exact_integer_consensus();
    }
    return false;
  }

  /// Equal integer entries: a fixed point of every rule and quantizer.
  bool exact_integer_consensus() const { return min() == max() && min() == std::floor(min()); }

  std::int64_t only_lift() const { return lifts_.begin()->first; }

 private:
  Criterion criterion_;
  std::multiset<double> values_;
  std::map<std::int64_t, std::size_t> lifts_;
};

TraceRow trace_row(std::size_t step, std::span<const double> x, double avg0) {
  TraceRow row;
  row.step = step;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  row.min = *lo;
  row.max = *hi;
  row.spread = *hi - *lo;
  double sq = 0.0;
  for (double v : x) sq += (v - avg0) * (v - avg0);
  row.mse = sq / static_cast<double>(x.size());
  row.avg = average(x);
  return row;
}

}  // namespace

TrialResult run_trial(const Graph& g, const TrialConfig& cfg, std::uint64_t trial_seed,
                      const StepObserver& observer) {
  cfg.validate();
  const std::size_t n = g.n_nodes();
  Rng rng(trial_seed);
  TrialResult res;
  res.seed = trial_seed;

  StateVector x = make_initial_state(cfg.init, n, rng);
  for (double v : x) {
    if (!std::isfinite(v)) throw SimulationError("non-finite initial state", 0);
  }
  res.initial_state = x;
  const double avg0 = average(x);
  res.initial_average = avg0;
  {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    res.initial_spread = *hi - *lo;
  }

  const std::size_t max_steps = cfg.max_steps ? cfg.max_steps : default_max_steps(g);
  const Criterion criterion = criterion_for(cfg.rule, cfg.quantizer);
  Tracker tracker(criterion, x);

  std::vector<char> selected(n, 0);
  std::size_t n_selected = 0;

  auto note_limit_set = [&](bool inside) {
    const double spread = tracker.max() - tracker.min();
    const double dev = std::max(std::abs(tracker.max() - avg0), std::abs(tracker.min() - avg0));
    res.post_con_max_spread = std::max(res.post_con_max_spread, spread);
    res.post_con_max_dev = std::max(res.post_con_max_dev, dev);
    if (!inside) res.left_limit_set = true;
  };

  if (cfg.record_trace) res.trace.push_back(trace_row(0, x, avg0));

  std::size_t t = 0;
  if (tracker.satisfied()) {
    res.converged = true;
    res.t_con = 0;
    note_limit_set(true);
  }
  if (!(res.converged && cfg.stop_at_convergence)) {
    while (t < max_steps) {
      ++t;
      const Edge e = g.sample_edge(rng);
      tracker.erase(x[e.i]);
      tracker.erase(x[e.j]);
      try {
        gossip_step(cfg.rule, cfg.quantizer, std::span<double>(x), e, rng);
      } catch (const std::invalid_argument& ex) {
        throw SimulationError(ex.what(), t);
      }
      if (!std::isfinite(x[e.i]) || !std::isfinite(x[e.j])) {
        throw SimulationError("non-finite state", t);
      }
      tracker.insert(x[e.i]);
      tracker.insert(x[e.j]);

      if (!res.t_all) {
        for (std::size_t k : {e.i, e.j}) {
          if (!selected[k]) {
            selected[k] = 1;
            ++n_selected;
          }
        }
        if (n_selected == n) res.t_all = t;
      }
      if (cfg.track_average) {
        res.max_average_drift = std::max(res.max_average_drift, std::abs(average(x) - avg0));
      }
      if (observer) observer(t, x, e);
      if (cfg.record_trace && t % cfg.trace_stride == 0) res.trace.push_back(trace_row(t, x, avg0));

      const bool inside = tracker.satisfied();
      if (res.converged) {
        note_limit_set(inside);
      } else if (inside) {
        res.converged = true;
        res.t_con = t;
        note_limit_set(true);
        if (cfg.stop_at_convergence) break;
      }
    }
  }
  res.steps_run = t;
  if (cfg.record_trace && res.trace.back().step != t) res.trace.push_back(trace_row(t, x, avg0));

  if (res.converged) {
    switch (criterion) {
      case Criterion::Consensus: res.alpha = x.front(); break;
      case Criterion::Tight: res.alpha = average(x); break;
      case Criterion::SetAThenTight:
        res.alpha = static_cast<double>(tracker.only_lift() / 2);
        break;
      case Criterion::SetR:
      case Criterion::None:
        if (tracker.min() == tracker.max()) res.alpha = tracker.min();
        break;
    }
  }
  if (res.alpha) res.z = std::abs(*res.alpha - avg0);

  double sq = 0.0;
  for (double v : x) {
    res.max_dev = std::max(res.max_dev, std::abs(v - avg0));
    sq += (v - avg0) * (v - avg0);
  }
  res.final_mse = sq / static_cast<double>(n);
  res.final_state = std::move(x);
  return res;
}

TrialResult run_trial(const TrialConfig& cfg) {
  return run_trial(build_graph(cfg.graph, cfg.seed), cfg, cfg.seed);
}

Stats summarize(std::span<const double> values) {
  Stats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  s.min = values.front();
  s.max = values.front();
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  const double count = static_cast<double>(s.count);
  s.mean = sum / count;
  if (s.count > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / (count - 1.0));
  }
  return s;
}

BatchResult run_batch(const TrialConfig& cfg, std::size_t trials, std::size_t threads) {
  return run_batch(build_graph(cfg.graph, cfg.seed), cfg, trials, threads);
}

BatchResult run_batch(const Graph& g, const TrialConfig& cfg, std::size_t trials,
                      std::size_t threads) {
  if (trials == 0) throw std::invalid_argument("batch needs at least one trial");
  cfg.validate();
  BatchResult out;
  out.trials.resize(trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      try {
        out.trials[i] = run_trial(g, cfg, derive_seed(cfg.seed, i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> t_con, z, max_dev, mse;
  for (const auto& r : out.trials) {
    if (r.t_con) t_con.push_back(static_cast<double>(*r.t_con));
    if (r.z) z.push_back(*r.z);
    max_dev.push_back(r.max_dev);
    mse.push_back(r.final_mse);
  }
  BatchSummary& s = out.summary;
  s.trials = trials;
  s.converged = t_con.size();
  s.convergence_rate = static_cast<double>(s.converged) / static_cast<double>(trials);
  s.t_con = summarize(t_con);
  s.z = summarize(z);
  s.max_dev = summarize(max_dev);
  s.final_mse = summarize(mse);
  return out;
}

std::optional<SymbolicMap> shadow_map(Rule rule, const QuantizerSpec& q) {
  if (q.step != 1.0) return std::nullopt;
  if (q.kind == QuantizerKind::Deterministic) {
    switch (rule) {
      case Rule::Compensating:
      case Rule::PartiallyQuantized: return SymbolicMap::G1;
      case Rule::TotallyQuantized: return SymbolicMap::G2;
      case Rule::Standard: return std::nullopt;
    }
  }
  if (q.kind == QuantizerKind::Floor) {
    switch (rule) {
      case Rule::Compensating: return SymbolicMap::G4;
      case Rule::PartiallyQuantized:
      case Rule::TotallyQuantized: return SymbolicMap::G5;
      case Rule::Standard: return std::nullopt;
    }
  }
  return std::nullopt;
}

ShadowResult shadow_trial(const Graph& g, const TrialConfig& cfg, std::uint64_t trial_seed) {
  cfg.validate();
  const auto map = shadow_map(cfg.rule, cfg.quantizer);
  if (!map) {
    throw std::invalid_argument("no symbolic map for rule '" + rule_name(cfg.rule) +
                                "' with quantizer '" + quantizer_name(cfg.quantizer) + "'");
  }
  Rng rng(trial_seed);
  const StateVector x0 = make_initial_state(cfg.init, g.n_nodes(), rng);
  std::vector<Dyadic> x;
  x.reserve(x0.size());
  for (double v : x0) x.push_back(Dyadic::from_double(v));
  SymbolicVector n = lift(x);

  ShadowResult res;
  const std::size_t steps = cfg.max_steps ? cfg.max_steps : default_max_steps(g);
  for (std::size_t t = 1; t <= steps; ++t) {
    const Edge e = g.sample_edge(rng);
    gossip_step(cfg.rule, cfg.quantizer, std::span<Dyadic>(x), e, rng);
    symbolic_step(*map, std::span<std::int64_t>(n), e, rng);
    res.steps_checked = t;
    if (x[e.i].twice().floor_i64() != n[e.i] || x[e.j].twice().floor_i64() != n[e.j]) {
      res.ok = false;
      res.first_mismatch = t;
      return res;
    }
  }
  if (lift(x) != n) {
    res.ok = false;
    res.first_mismatch = res.steps_checked;
  }
  return res;
}

ShadowResult shadow_trial(const TrialConfig& cfg) {
  return shadow_trial(build_graph(cfg.graph, cfg.seed), cfg, cfg.seed);
}

}  // namespace qgossip
