#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qgossip/analysis.hpp"

using namespace qgossip;

namespace {

Eigen::MatrixXd pair_matrix(std::size_t n, Edge e) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  d(static_cast<Eigen::Index>(e.i)) = 1;
  d(static_cast<Eigen::Index>(e.j)) = -1;
  return Eigen::MatrixXd::Identity(d.size(), d.size()) - 0.5 * d * d.transpose();
}

// Dense reference for E[P M P].
Eigen::MatrixXd dense_N(const Eigen::MatrixXd& m, const Graph& g) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (std::size_t k = 0; k < g.n_edges(); ++k) {
    const Eigen::MatrixXd p = pair_matrix(g.n_nodes(), g.edges()[k]);
    out += g.probs()[k] * p * m * p;
  }
  return out;
}

Eigen::MatrixXd random_in_S(std::size_t n, Rng& rng) {
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd a(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = 0; j < size; ++j) a(i, j) = rng.uniform() - 0.5;
  }
  Eigen::MatrixXd s = a + a.transpose();
  const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(size, size) -
                            Eigen::MatrixXd::Constant(size, size, 1.0 / static_cast<double>(n));
  return c * s * c;
}

std::vector<Graph> sample_graphs(std::size_t n) {
  Rng rng(n);
  std::vector<Graph> out{complete_graph(n), ring_graph(n)};
  out.push_back(random_geometric_graph(n, 0.8, rng));
  return out;
}

}  // namespace

TEST(ExpectedUpdate, Examples) {
  const auto p2 = expected_update_matrix(complete_graph(2));
  EXPECT_TRUE(p2.isApprox(Eigen::MatrixXd::Constant(2, 2, 0.5)));
  const auto p3 = expected_update_matrix(complete_graph(3));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p3(i, i), 2.0 / 3.0, 1e-15);
  Rng rng(1);
  const Graph g = random_geometric_graph(9, 0.6, rng);
  const auto p = expected_update_matrix(g);
  EXPECT_LE((p.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-14);
  EXPECT_LE((p.colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-14);
}

TEST(ApplyN, MatchesDenseProducts) {
  Rng rng(2);
  for (std::size_t n : {2, 3, 6, 11}) {
    for (const Graph& g : sample_graphs(n)) {
      const Eigen::MatrixXd m = random_in_S(n, rng);
      EXPECT_LE((apply_N(m, g) - dense_N(m, g)).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
  // Not in S, not centered: the operator itself does not care.
  const Graph g = complete_graph(4);
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(4, 4);
  m = m + m.transpose().eval();
  EXPECT_LE((apply_N(m, g) - dense_N(m, g)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(ApplyN, Examples) {
  const Graph g2 = complete_graph(2);
  EXPECT_EQ(apply_N(Eigen::MatrixXd::Zero(2, 2), g2), Eigen::MatrixXd::Zero(2, 2));
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2) - 0.5 * Eigen::MatrixXd::Ones(2, 2);
  EXPECT_LE(apply_N(m, g2).cwiseAbs().maxCoeff(), 1e-15);
  Rng rng(3);
  const Graph g = ring_graph(7);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(7, 7);
  a = a + a.transpose().eval();
  EXPECT_NEAR(apply_N(a, g).sum(), a.sum(), 1e-12);
  EXPECT_THROW(apply_N(Eigen::MatrixXd::Zero(3, 3), g), std::invalid_argument);
}

TEST(ApplyN, MonteCarloAgreement) {
  Rng rng(4);
  const Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}},
                {0.3, 0.1, 0.2, 0.15, 0.05, 0.2});
  const Eigen::MatrixXd m = random_in_S(5, rng);
  const int draws = 40000;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(5, 5), sum_sq = Eigen::MatrixXd::Zero(5, 5);
  for (int r = 0; r < draws; ++r) {
    const Eigen::MatrixXd p = pair_matrix(5, g.sample_edge(rng));
    const Eigen::MatrixXd s = p * m * p;
    sum += s;
    sum_sq += s.cwiseProduct(s);
  }
  const Eigen::MatrixXd mean = sum / draws;
  const Eigen::MatrixXd var = sum_sq / draws - mean.cwiseProduct(mean);
  const Eigen::MatrixXd exact = apply_N(m, g);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double se = std::sqrt(std::max(var(i, j), 0.0) / draws);
      EXPECT_LE(std::abs(mean(i, j) - exact(i, j)), 3 * se + 1e-12) << i << "," << j;
    }
  }
}

TEST(QBar, Examples) {
  const auto q2 = q_bar(complete_graph(2));
  Eigen::MatrixXd expect(2, 2);
  expect << 0.5, -0.5, -0.5, 0.5;
  EXPECT_TRUE(q2.isApprox(expect));
  for (std::size_t n : {3, 6, 9}) {
    for (const Graph& g : sample_graphs(n)) {
      const auto q = q_bar(g);
      EXPECT_LE(q.rowwise().sum().cwiseAbs().maxCoeff(), 1e-14);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q);
      EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-14);
    }
  }
}

TEST(FixedPoint, ClosedForms) {
  const auto f2 = theoretical_fixed_point(2);
  Eigen::MatrixXd expect(2, 2);
  expect << 0.125, -0.125, -0.125, 0.125;
  EXPECT_TRUE(f2.isApprox(expect));
  EXPECT_NEAR(j_bar(2), 0.35355339059327373, 1e-15);
  EXPECT_NEAR(j_bar(4), 0.4330127018922193, 1e-15);
  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_NEAR(theoretical_fixed_point(n).trace(), (static_cast<double>(n) - 1) / 4, 1e-14);
  }
  EXPECT_THROW(theoretical_fixed_point(1), std::invalid_argument);
  EXPECT_THROW(j_bar(1), std::invalid_argument);
}

TEST(FixedPoint, OneStepResidual) {
  for (std::size_t n = 2; n <= 10; ++n) {
    for (const Graph& g : sample_graphs(n)) {
      const auto f = theoretical_fixed_point(n);
      EXPECT_LE((auxiliary_step(f, g) - f).norm(), 1e-12) << n;
    }
  }
}

TEST(Auxiliary, IteratesAndValidates) {
  const Graph g = ring_graph(6);
  const auto f = theoretical_fixed_point(6);
  EXPECT_LE((iterate_auxiliary(g, f, 1) - f).norm(), 1e-12);
  Rng rng(5);
  const Eigen::MatrixXd s0 = random_in_S(6, rng);
  EXPECT_EQ(iterate_auxiliary(g, s0, 0), s0);
  const Eigen::MatrixXd s = iterate_auxiliary(g, s0, 37);
  EXPECT_LE(std::abs(s.sum()), 1e-9 * 36);
  EXPECT_LE((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-12);

  EXPECT_THROW(iterate_auxiliary(g, Eigen::MatrixXd::Identity(6, 6), 3), std::invalid_argument);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(6, 6);
  asym(0, 1) = 1;
  asym(1, 0) = 0.5;
  asym(0, 0) = -1.5;
  EXPECT_THROW(iterate_auxiliary(g, asym, 3), std::invalid_argument);
}

TEST(Auxiliary, ConvergesFromZeroForAnyW) {
  const std::size_t n = 5;
  const Graph base = complete_graph(n);
  Rng rng(6);
  for (int variant = 0; variant < 4; ++variant) {
    std::vector<double> w(base.n_edges());
    double total = 0;
    for (double& v : w) total += (v = 0.1 + rng.uniform());
    for (double& v : w) v /= total;
    const Graph g = base.with_probs(w);
    const auto rows = covariance_convergence(g, Eigen::MatrixXd::Zero(n, n), 3000);
    EXPECT_LE(rows.back().frobenius_residual, 1e-10);
    EXPECT_NEAR(rows.back().trace, (n - 1) / 4.0, 1e-10);
    EXPECT_EQ(rows.front().step, 0u);
    EXPECT_EQ(rows.front().trace, 0.0);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      EXPECT_LE(rows[k].frobenius_residual, rows[k - 1].frobenius_residual + 1e-15);
    }
  }
}

TEST(Auxiliary, DominatesEmpiricalCovarianceTrace) {
  // Compensating rule with random rounding from a fixed start; the auxiliary
  // recursion started at y(0) y(0)^T bounds the mean of ||y(t)||^2.
  const std::size_t n = 5;
  const Graph g = complete_graph(n);
  const StateVector x0{0.3, -2.2, 1.7, 4.45, -0.9};
  const double avg0 = average(x0);
  Eigen::VectorXd y0(5);
  for (int i = 0; i < 5; ++i) y0(i) = x0[static_cast<std::size_t>(i)] - avg0;
  const std::size_t steps = 25;
  const int trials = 20000;
  std::vector<double> sum(steps + 1, 0.0), sum_sq(steps + 1, 0.0);
  const QuantizerSpec q{QuantizerKind::Probabilistic, 1.0, 0.5};
  for (int r = 0; r < trials; ++r) {
    Rng rng(derive_seed(77, static_cast<std::uint64_t>(r)));
    StateVector x = x0;
    for (std::size_t t = 0; t <= steps; ++t) {
      double norm_sq = 0;
      for (double v : x) norm_sq += (v - avg0) * (v - avg0);
      sum[t] += norm_sq;
      sum_sq[t] += norm_sq * norm_sq;
      if (t < steps) gossip_step(Rule::Compensating, q, std::span<double>(x), g.sample_edge(rng), rng);
    }
  }
  Eigen::MatrixXd sigma = y0 * y0.transpose();
  for (std::size_t t = 0; t <= steps; ++t) {
    const double mean = sum[t] / trials;
    const double se = std::sqrt(std::max(0.0, sum_sq[t] / trials - mean * mean) / trials);
    EXPECT_GE(sigma.trace(), mean - 3 * se - 1e-12 * mean) << "t=" << t;
    sigma = auxiliary_step(sigma, g);
  }
}

TEST(EstimateJ, ConsensusOnIntegersIsExact) {
  const CostEstimate est = estimate_J(ring_graph(6), 20, 500, InitSpec::fixed({3, 3, 3, 3, 3, 3}), 1);
  EXPECT_EQ(est.value, 0.0);
  EXPECT_EQ(est.std_error, 0.0);
  EXPECT_THROW(estimate_J(ring_graph(6), 0, 10, InitSpec{}, 1), std::invalid_argument);
  EXPECT_THROW(estimate_J(ring_graph(6), 10, 0, InitSpec{}, 1), std::invalid_argument);
}

TEST(EstimateJ, BelowBoundOnCompleteFive) {
  const Graph g = complete_graph(5);
  const CostEstimate est =
      estimate_J(g, 2000, default_cost_horizon(5), InitSpec::uniform(-100, 100), 2);
  EXPECT_GT(est.value, 0.0);
  EXPECT_LE(est.value, j_bar(5) + 3 * est.std_error);
  EXPECT_LE(est.value, 0.5 + 3 * est.std_error);
}

TEST(EstimateJ, Reproducible) {
  const Graph g = ring_graph(4);
  const auto a = estimate_J(g, 30, 200, InitSpec::uniform(-10, 10), 9);
  const auto b = estimate_J(g, 30, 200, InitSpec::uniform(-10, 10), 9);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(ErrorStats, Examples) {
  Rng rng(7);
  const auto ints = quantization_error_stats({1, -2, 5}, 1000, rng);
  EXPECT_EQ(ints.mean, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(ints.covariance, Eigen::MatrixXd::Zero(3, 3));

  const int samples = 100000;
  const auto halves = quantization_error_stats({0.5, 0.5, 0.5, 0.5}, samples, rng);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(halves.mean(i), 0.0, 4 * 0.5 / std::sqrt(samples));
    EXPECT_NEAR(halves.covariance(i, i), 0.25, 0.005);
    for (int j = 0; j < 4; ++j) {
      if (i != j) {
        EXPECT_NEAR(halves.covariance(i, j), 0.0, 4 * 0.25 / std::sqrt(samples));
      }
    }
  }

  const auto p3 = quantization_error_stats({0.3, 7.3}, samples, rng);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(p3.covariance(i, i), 0.21, 0.005);
    EXPECT_LE(p3.covariance(i, i), 0.25);
  }
  EXPECT_THROW(quantization_error_stats({0.5}, 1, rng), std::invalid_argument);
}

TEST(ErrorStats, UncorrelatedWithState) {
  // Sample cross-covariance between a random centered state and its rounding error.
  Rng rng(8);
  const int samples = 50000;
  double sxy = 0, sx = 0, sy = 0;
  for (int r = 0; r < samples; ++r) {
    const double x = (rng.uniform() - 0.5) * 10;
    const double e = static_cast<double>(quantize_prob(x, rng)) - x;
    sxy += x * e;
    sx += x;
    sy += e;
  }
  const double cov = sxy / samples - (sx / samples) * (sy / samples);
  // |x| <= 5 and |e| <= 1: each product is bounded by 5.
  EXPECT_NEAR(cov, 0.0, 4 * 5 / std::sqrt(samples));
}

TEST(DeviationZ, Examples) {
  EXPECT_EQ(deviation_z({3, 3}, {2, 4}), 0.0);
  EXPECT_EQ(deviation_z({4, 4}, {2, 4}), 1.0);
  EXPECT_THROW(deviation_z({4, 5}, {2, 4}), std::invalid_argument);
  EXPECT_THROW(deviation_z({}, {2, 4}), std::invalid_argument);
}
