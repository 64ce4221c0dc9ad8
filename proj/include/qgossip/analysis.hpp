#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgossip/dynamics.hpp"
#include "qgossip/graph.hpp"
#include "qgossip/rng.hpp"

namespace qgossip {

/// Dense symmetric N x N matrix (covariances and the expectation operators).
using CovarianceMatrix = Eigen::MatrixXd;

/// E[P] = sum_e W_e (I - E_e / 2), with E_ij = (e_i - e_j)(e_i - e_j)^T.
CovarianceMatrix expected_update_matrix(const Graph& g);

/// N(M) = E[P M P], accumulated edge by edge through the rank-two structure of
/// P_ij M P_ij; no dense triple products.
CovarianceMatrix apply_N(const CovarianceMatrix& m, const Graph& g);

/// Q-bar = E[(I - P)^2] = I - E[P].
CovarianceMatrix q_bar(const Graph& g);

/// One step of Sigma <- N(Sigma) + Q-bar / 4.
CovarianceMatrix auxiliary_step(const CovarianceMatrix& sigma, const Graph& g);

/// `steps` auxiliary steps from sigma0, which must be symmetric and satisfy
/// 1^T sigma0 1 = 0 (within 1e-9 N^2); throws std::invalid_argument otherwise.
CovarianceMatrix iterate_auxiliary(const Graph& g, const CovarianceMatrix& sigma0,
                                   std::size_t steps);

/// (I - 11^T / n) / 4, the limit of the auxiliary recursion for every W.
CovarianceMatrix theoretical_fixed_point(std::size_t n);
/// sqrt((n - 1) / n) / 2.
double j_bar(std::size_t n);

struct CovarianceRow {
  std::size_t step = 0;
  double frobenius_residual = 0.0;  // ||Sigma(step) - fixed point||_F
  double trace = 0.0;
};

/// Rows for steps 0..steps of the auxiliary recursion started at sigma0.
std::vector<CovarianceRow> covariance_convergence(const Graph& g, const CovarianceMatrix& sigma0,
                                                  std::size_t steps);

struct CostEstimate {
  double value = 0.0;      ///< sqrt(mean over trials of ||y||^2 / N)
  double std_error = 0.0;  ///< delta-method standard error of `value`
  double mean_sq = 0.0;    ///< mean over trials of ||y||^2 / N
  double mean_sq_std_error = 0.0;
  std::size_t trials = 0;
  std::size_t horizon = 0;
};

/// Monte Carlo estimate of the asymptotic RMS distance from the initial
/// average for the compensating rule with the probabilistic quantizer.
/// Trial k uses Rng(derive_seed(seed, k)): initial state first, then steps.
CostEstimate estimate_J(const Graph& g, std::size_t trials, std::size_t horizon,
                        const InitSpec& init, std::uint64_t seed);

/// Default horizon ceil(200 N ln N).
std::size_t default_cost_horizon(std::size_t n);

struct ErrorStats {
  Eigen::VectorXd mean;
  CovarianceMatrix covariance;  // unbiased sample covariance
};

/// Sample statistics of e = q_p(x) - x over `samples` independent draws.
ErrorStats quantization_error_stats(const StateVector& x, std::size_t samples, Rng& rng);

/// |alpha - average(x0)| where alpha is the common value of `final_state`.
/// Throws std::invalid_argument if the entries differ by more than 1e-9.
double deviation_z(const StateVector& final_state, const StateVector& x0);

}  // namespace qgossip
