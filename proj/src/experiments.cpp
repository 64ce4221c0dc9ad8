#include "qgossip/experiments.hpp"

#include <array>
#include <stdexcept>

namespace qgossip {

std::vector<Fig1Row> run_fig1(const Fig1Options& opt) {
  if (opt.trials == 0) throw std::invalid_argument("fig1 needs at least one trial");
  const std::array<QuantizerSpec, 2> quantizers{
      QuantizerSpec{QuantizerKind::Deterministic, 1.0, 0.5},
      QuantizerSpec{QuantizerKind::Probabilistic, 1.0, 0.5}};
  std::vector<Fig1Row> rows;
  for (std::size_t n : opt.sizes) {
    if (n < 2) throw std::invalid_argument("fig1 sizes must be >= 2");
    const Graph g = complete_graph(n);
    for (const auto& q : quantizers) {
      for (std::size_t k = 0; k < opt.intervals.size(); ++k) {
        const auto [lo, hi] = opt.intervals[k];
        TrialConfig cfg;
        cfg.graph = GraphSpec{Topology::Complete, n, 0, 0, 0.5, {}};
        cfg.rule = Rule::TotallyQuantized;
        cfg.quantizer = q;
        cfg.init = InitSpec::uniform(lo, hi);
        cfg.seed = derive_seed(derive_seed(opt.seed, n), k + 1);
        cfg.max_steps = opt.max_steps;
        const BatchResult batch = run_batch(g, cfg, opt.trials, opt.threads);
        rows.push_back({n, q, {lo, hi}, batch.summary.z, opt.trials});
      }
    }
  }
  return rows;
}

std::vector<Fig2Row> run_fig2(const Fig2Options& opt) {
  if (opt.trials == 0) throw std::invalid_argument("fig2 needs at least one trial");
  if (opt.steps == 0) throw std::invalid_argument("fig2 needs at least one step");
  const Graph g = build_graph(opt.graph, opt.seed);
  const std::array<Rule, 4> rules{Rule::Standard, Rule::TotallyQuantized,
                                  Rule::PartiallyQuantized, Rule::Compensating};

  std::vector<std::array<double, 4>> sums(opt.steps + 1, std::array<double, 4>{});
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const std::uint64_t trial_seed = derive_seed(opt.seed, trial);
    Rng init_rng(trial_seed);
    const StateVector x0 = make_initial_state(opt.init, g.n_nodes(), init_rng);
    for (std::size_t r = 0; r < rules.size(); ++r) {
      TrialConfig cfg;
      cfg.graph = opt.graph;
      cfg.rule = rules[r];
      cfg.quantizer = opt.quantizer;
      cfg.init = InitSpec::fixed(x0);
      cfg.max_steps = opt.steps;
      cfg.record_trace = true;
      cfg.stop_at_convergence = false;
      const TrialResult res = run_trial(g, cfg, derive_seed(trial_seed, r + 1));
      for (const auto& row : res.trace) sums[row.step][r] += row.mse;
    }
  }

  const double count = static_cast<double>(opt.trials);
  std::vector<Fig2Row> rows;
  rows.reserve(sums.size());
  for (std::size_t t = 0; t < sums.size(); ++t) {
    rows.push_back({t, sums[t][0] / count, sums[t][1] / count, sums[t][2] / count,
                    sums[t][3] / count});
  }
  return rows;
}

std::vector<CovarianceRow> run_covariance(const GraphSpec& spec, std::size_t steps,
                                          std::uint64_t seed) {
  const Graph g = build_graph(spec, seed);
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  return covariance_convergence(g, CovarianceMatrix::Zero(n, n), steps);
}

}  // namespace qgossip
