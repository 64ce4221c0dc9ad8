#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qgossip/analysis.hpp"
#include "qgossip/sim.hpp"

namespace qgossip {

struct Fig1Options {
  std::vector<std::size_t> sizes{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::size_t trials = 1000;
  std::vector<std::pair<double, double>> intervals{{0.0, 20.0}, {0.0, 100.0}};
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t max_steps = 0;  // 0: default per graph
};

struct Fig1Row {
  std::size_t n = 0;
  QuantizerSpec quantizer;
  std::pair<double, double> interval;
  Stats z;  // over converged trials
  std::size_t trials = 0;
};

/// Totally quantized trials on complete graphs. Rows are ordered by size, then
/// quantizer (det, prob), then interval. Both quantizers of a cell share the
/// trial seeds, hence the initial states.
std::vector<Fig1Row> run_fig1(const Fig1Options& opt);

struct Fig2Options {
  GraphSpec graph{Topology::Geometric, 20, 0, 0, 0.5, {}};
  std::size_t trials = 10;
  InitSpec init = InitSpec::uniform(-100.0, 100.0);
  std::size_t steps = 4000;
  std::uint64_t seed = 1;
  QuantizerSpec quantizer{QuantizerKind::Probabilistic, 1.0, 0.5};
};

struct Fig2Row {
  std::size_t step = 0;
  double standard = 0.0;
  double totally = 0.0;
  double partially = 0.0;
  double compensating = 0.0;
};

/// Mean over trials of (1/N) ||x(t) - x_ave(0) 1||^2 for each rule, t = 0..steps.
/// Within a trial the four rules start from the same x(0) on the same graph.
std::vector<Fig2Row> run_fig2(const Fig2Options& opt);

/// Auxiliary recursion from Sigma(0) = 0 on the graph described by `spec`.
std::vector<CovarianceRow> run_covariance(const GraphSpec& spec, std::size_t steps,
                                          std::uint64_t seed);

}  // namespace qgossip
