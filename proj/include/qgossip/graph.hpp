#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "qgossip/rng.hpp"

namespace qgossip {

/// Undirected edge, stored with i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Communication graph together with the edge selection law W.
///
/// Edges are kept in lexicographic order; `probs()[k]` is the probability of
/// selecting `edges()[k]`. Construction validates every invariant (simple,
/// connected, probabilities positive and summing to one), so a Graph value is
/// always usable for simulation.
class Graph {
 public:
  /// Uniform selection probabilities.
  Graph(std::size_t n_nodes, std::vector<Edge> edges);
  Graph(std::size_t n_nodes, std::vector<Edge> edges, std::vector<double> probs);

  std::size_t n_nodes() const { return n_nodes_; }
  std::size_t n_edges() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const double> probs() const { return probs_; }

  bool has_edge(Edge e) const;

  /// Same topology, different W. Probabilities are aligned with edges().
  Graph with_probs(std::vector<double> probs) const;

  /// Cumulative-probability inversion over the lexicographic edge order.
  Edge sample_edge(Rng& rng) const;

 private:
  std::size_t n_nodes_;
  std::vector<Edge> edges_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

Graph complete_graph(std::size_t n);
/// Cycle 0-1-...-(n-1)-0. For n = 2 the cycle collapses to the single edge.
Graph ring_graph(std::size_t n);
Graph grid_graph(std::size_t rows, std::size_t cols);
/// Nodes uniform on the unit square, edge iff distance <= radius. Positions are
/// resampled until the graph is connected; throws after `max_attempts`.
Graph random_geometric_graph(std::size_t n, double radius, Rng& rng,
                             std::size_t max_attempts = 1000);

inline Edge sample_edge(const Graph& g, Rng& rng) { return g.sample_edge(rng); }

bool is_connected(std::size_t n_nodes, std::span<const Edge> edges);
inline bool is_connected(const Graph& g) { return is_connected(g.n_nodes(), g.edges()); }

/// Reads `i,j,prob` rows (optional header) covering every edge of `g` exactly
/// once. Probabilities whose total is within 1e-6 of one are renormalized.
Graph load_edge_probs(const Graph& g, const std::filesystem::path& path);

}  // namespace qgossip
