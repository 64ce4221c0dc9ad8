#include "qgossip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgossip {

namespace {

void check_square(const CovarianceMatrix& m, const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  if (m.rows() != n || m.cols() != n) {
    throw std::invalid_argument("matrix dimension does not match graph size");
  }
}

void check_in_subspace(const CovarianceMatrix& m) {
  const double n = static_cast<double>(m.rows());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("matrix is not symmetric");
  }
  if (std::abs(m.sum()) > 1e-9 * n * n) {
    throw std::invalid_argument("matrix is not in S (1^T M 1 != 0)");
  }
}

}  // namespace

CovarianceMatrix expected_update_matrix(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  CovarianceMatrix p = CovarianceMatrix::Identity(n, n);
  const auto edges = g.edges();
  const auto probs = g.probs();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(edges[k].i);
    const auto j = static_cast<Eigen::Index>(edges[k].j);
    const double w = 0.5 * probs[k];
    p(i, i) -= w;
    p(j, j) -= w;
    p(i, j) += w;
    p(j, i) += w;
  }
  return p;
}

CovarianceMatrix apply_N(const CovarianceMatrix& m, const Graph& g) {
  check_square(m, g);
  // P M P = M - (d r + r^T d^T) / 2 + s d d^T / 4, with d = e_i - e_j,
  // r = d^T M (row i minus row j) and s = d^T M d.
  CovarianceMatrix out = m;
  const auto edges = g.edges();
  const auto probs = g.probs();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(edges[k].i);
    const auto j = static_cast<Eigen::Index>(edges[k].j);
    const double w = probs[k];
    const Eigen::RowVectorXd r = m.row(i) - m.row(j);
    const double s = m(i, i) - 2.0 * m(i, j) + m(j, j);

    out.row(i) -= 0.5 * w * r;
    out.row(j) += 0.5 * w * r;
    out.col(i) -= 0.5 * w * r.transpose();
    out.col(j) += 0.5 * w * r.transpose();

    const double c = 0.25 * w * s;
    out(i, i) += c;
    out(j, j) += c;
    out(i, j) -= c;
    out(j, i) -= c;
  }
  return out;
}

CovarianceMatrix q_bar(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.n_nodes());
  return CovarianceMatrix::Identity(n, n) - expected_update_matrix(g);
}

CovarianceMatrix auxiliary_step(const CovarianceMatrix& sigma, const Graph& g) {
  return apply_N(sigma, g) + 0.25 * q_bar(g);
}

CovarianceMatrix iterate_auxiliary(const Graph& g, const CovarianceMatrix& sigma0,
                                   std::size_t steps) {
  check_square(sigma0, g);
  check_in_subspace(sigma0);
  const CovarianceMatrix drive = 0.25 * q_bar(g);
  CovarianceMatrix sigma = sigma0;
  for (std::size_t t = 0; t < steps; ++t) sigma = apply_N(sigma, g) + drive;
  return sigma;
}

CovarianceMatrix theoretical_fixed_point(std::size_t n) {
  if (n < 2) throw std::invalid_argument("fixed point needs n >= 2");
  const auto size = static_cast<Eigen::Index>(n);
  const double inv = 1.0 / static_cast<double>(n);
  return 0.25 * (CovarianceMatrix::Identity(size, size) -
                 CovarianceMatrix::Constant(size, size, inv));
}

double j_bar(std::size_t n) {
  if (n < 2) throw std::invalid_argument("j_bar needs n >= 2");
  const double nd = static_cast<double>(n);
  return 0.5 * std::sqrt((nd - 1.0) / nd);
}

std::vector<CovarianceRow> covariance_convergence(const Graph& g, const CovarianceMatrix& sigma0,
                                                  std::size_t steps) {
  check_square(sigma0, g);
  check_in_subspace(sigma0);
  const CovarianceMatrix target = theoretical_fixed_point(g.n_nodes());
  const CovarianceMatrix drive = 0.25 * q_bar(g);
  std::vector<CovarianceRow> rows;
  rows.reserve(steps + 1);
  CovarianceMatrix sigma = sigma0;
  for (std::size_t t = 0;; ++t) {
    rows.push_back({t, (sigma - target).norm(), sigma.trace()});
    if (t == steps) break;
    sigma = apply_N(sigma, g) + drive;
  }
  return rows;
}

std::size_t default_cost_horizon(std::size_t n) {
  const double nd = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(200.0 * nd * std::log(nd)));
}

CostEstimate estimate_J(const Graph& g, std::size_t trials, std::size_t horizon,
                        const InitSpec& init, std::uint64_t seed) {
  if (trials == 0 || horizon == 0) {
    throw std::invalid_argument("estimate_J needs positive trials and horizon");
  }
  const std::size_t n = g.n_nodes();
  const QuantizerSpec q{QuantizerKind::Probabilistic, 1.0, 0.5};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(derive_seed(seed, k));
    StateVector x = make_initial_state(init, n, rng);
    const double x0_avg = average(x);
    for (std::size_t t = 0; t < horizon; ++t) {
      gossip_step(Rule::Compensating, q, std::span<double>(x), g.sample_edge(rng), rng);
    }
    double norm_sq = 0.0;
    for (double v : x) norm_sq += (v - x0_avg) * (v - x0_avg);
    const double per_node = norm_sq / static_cast<double>(n);
    sum += per_node;
    sum_sq += per_node * per_node;
  }
  const double count = static_cast<double>(trials);
  CostEstimate est;
  est.trials = trials;
  est.horizon = horizon;
  est.mean_sq = sum / count;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - count * est.mean_sq * est.mean_sq) /
                                                    (count - 1.0))
                                : 0.0;
  est.mean_sq_std_error = std::sqrt(var / count);
  est.value = std::sqrt(est.mean_sq);
  est.std_error = est.value > 0.0 ? est.mean_sq_std_error / (2.0 * est.value) : 0.0;
  return est;
}

ErrorStats quantization_error_stats(const StateVector& x, std::size_t samples, Rng& rng) {
  if (samples < 2) throw std::invalid_argument("quantization_error_stats needs >= 2 samples");
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
  CovarianceMatrix outer = CovarianceMatrix::Zero(n, n);
  Eigen::VectorXd e(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double xi = x[static_cast<std::size_t>(i)];
      e(i) = static_cast<double>(quantize_prob(xi, rng)) - xi;
    }
    sum += e;
    outer.noalias() += e * e.transpose();
  }
  const double count = static_cast<double>(samples);
  ErrorStats stats;
  stats.mean = sum / count;
  stats.covariance = (outer - count * stats.mean * stats.mean.transpose()) / (count - 1.0);
  return stats;
}

double deviation_z(const StateVector& final_state, const StateVector& x0) {
  if (final_state.empty()) throw std::invalid_argument("deviation_z of an empty state");
  const auto [lo, hi] = std::minmax_element(final_state.begin(), final_state.end());
  if (*hi - *lo > 1e-9) throw std::invalid_argument("deviation_z: state is not at consensus");
  return std::abs(final_state.front() - average(x0));
}

}  // namespace qgossip
