#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgossip/dyadic.hpp"
#include "qgossip/graph.hpp"
#include "qgossip/quantize.hpp"
#include "qgossip/rng.hpp"

namespace qgossip {

using StateVector = std::vector<double>;

enum class Rule {
  Standard,            ///< x_i' = x_j' = (x_i + x_j) / 2
  TotallyQuantized,    ///< x_i' = x_j' = (q_i + q_j) / 2
  PartiallyQuantized,  ///< x_i' = x_i / 2 + q_j / 2
  Compensating,        ///< x_i' = x_i - q_i / 2 + q_j / 2
};

/// Config spelling: standard | totally | partially | compensating.
Rule parse_rule(std::string_view text);
std::string rule_name(Rule rule);

/// One pairwise update on the selected edge; every other entry is untouched.
///
/// The transmitted values q_i = q(x_i), q_j = q(x_j) are drawn once, lower
/// node index first, and used by both endpoints. Standard gossip draws nothing.
/// Does not check that `edge` belongs to a graph; endpoints must be in range.
void gossip_step(Rule rule, const QuantizerSpec& q, std::span<double> x, Edge edge, Rng& rng);

/// Exact-arithmetic variant (unit quantizer step only).
void gossip_step(Rule rule, const QuantizerSpec& q, std::span<Dyadic> x, Edge edge, Rng& rng);

/// Validating, value-returning form: rejects edges that are not in `g` and
/// states whose length differs from g.n_nodes().
StateVector gossip_step(Rule rule, const QuantizerSpec& q, const Graph& g, const StateVector& x,
                        Edge edge, Rng& rng);

/// Arithmetic mean; throws on an empty vector.
double average(std::span<const double> x);

/// How initial states are produced.
struct InitSpec {
  enum class Kind { Uniform, Values };
  Kind kind = Kind::Uniform;
  double lo = -100.0;
  double hi = 100.0;
  std::vector<double> values;

  static InitSpec uniform(double lo, double hi) { return {Kind::Uniform, lo, hi, {}}; }
  static InitSpec fixed(std::vector<double> v) { return {Kind::Values, 0.0, 0.0, std::move(v)}; }
};

/// Config spelling: uniform:<lo>:<hi> | file:<path> (one value per line or CSV field).
InitSpec parse_init(std::string_view text);
std::string init_name(const InitSpec& init);

/// Uniform entries use n draws from `rng`, in node order.
StateVector make_initial_state(const InitSpec& init, std::size_t n, Rng& rng);

}  // namespace qgossip
