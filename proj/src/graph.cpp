#include "qgossip/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qgossip {

namespace {

std::vector<double> uniform_probs(std::size_t count) {
  return std::vector<double>(count, count == 0 ? 0.0 : 1.0 / static_cast<double>(count));
}

}  // namespace

Graph::Graph(std::size_t n_nodes, std::vector<Edge> edges)
    : Graph(n_nodes, edges, uniform_probs(edges.size())) {}

Graph::Graph(std::size_t n_nodes, std::vector<Edge> edges, std::vector<double> probs)
    : n_nodes_(n_nodes) {
  if (n_nodes < 2) {
    throw std::invalid_argument("graph needs at least 2 nodes");
  }
  if (edges.size() != probs.size()) {
    throw std::invalid_argument("edge_probs must align with edges");
  }

  std::vector<std::pair<Edge, double>> tagged;
  tagged.reserve(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    Edge e = edges[k];
    if (e.i == e.j) {
      throw std::invalid_argument("self-loop on node " + std::to_string(e.i));
    }
    if (e.i > e.j) std::swap(e.i, e.j);
    if (e.j >= n_nodes) {
      throw std::invalid_argument("edge endpoint " + std::to_string(e.j) + " out of range");
    }
    if (!(probs[k] > 0.0) || !std::isfinite(probs[k])) {
      throw std::invalid_argument("edge probabilities must be strictly positive");
    }
    tagged.emplace_back(e, probs[k]);
  }
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < tagged.size(); ++k) {
    if (tagged[k].first == tagged[k - 1].first) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(tagged[k].first.i) + "," +
                                  std::to_string(tagged[k].first.j) + ")");
    }
  }

  edges_.reserve(tagged.size());
  probs_.reserve(tagged.size());
  for (const auto& [e, p] : tagged) {
    edges_.push_back(e);
    probs_.push_back(p);
  }

  if (!is_connected(n_nodes_, edges_)) {
    throw std::invalid_argument("graph is not connected");
  }

  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("edge probabilities must sum to 1");
  }

  cumulative_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

bool Graph::has_edge(Edge e) const {
  if (e.i > e.j) std::swap(e.i, e.j);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

Graph Graph::with_probs(std::vector<double> probs) const {
  return Graph(n_nodes_, edges_, std::move(probs));
}

Edge Graph::sample_edge(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return edges_[static_cast<std::size_t>(it - cumulative_.begin())];
}

Graph complete_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete_graph needs n >= 2");
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph(n, std::move(edges));
}

Graph ring_graph(std::size_t n) {
  if (n < 2) throw std::invalid_argument("ring_graph needs n >= 2");
  if (n == 2) return Graph(2, {{0, 1}});
  std::vector<Edge> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return Graph(n, std::move(edges));
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0 || rows * cols < 2) {
    throw std::invalid_argument("grid_graph needs at least 2 nodes");
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) edges.push_back({v, v + 1});
      if (r + 1 < rows) edges.push_back({v, v + cols});
    }
  }
  return Graph(rows * cols, std::move(edges));
}

Graph random_geometric_graph(std::size_t n, double radius, Rng& rng, std::size_t max_attempts) {
  if (n < 2) throw std::invalid_argument("random_geometric_graph needs n >= 2");
  if (!(radius > 0.0) || radius > std::sqrt(2.0)) {
    throw std::invalid_argument("radius must lie in (0, sqrt(2)]");
  }
  std::vector<double> xs(n), ys(n);
  const double r2 = radius * radius;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t v = 0; v < n; ++v) {
      xs[v] = rng.uniform();
      ys[v] = rng.uniform();
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = xs[i] - xs[j];
        const double dy = ys[i] - ys[j];
        if (dx * dx + dy * dy <= r2) edges.push_back({i, j});
      }
    }
    if (is_connected(n, edges)) return Graph(n, std::move(edges));
  }
  throw std::runtime_error("random geometric graph: not connected after " +
                           std::to_string(max_attempts) + " attempts (n=" + std::to_string(n) +
                           ", radius=" + std::to_string(radius) + ")");
}

bool is_connected(std::size_t n_nodes, std::span<const Edge> edges) {
  if (n_nodes == 0) return false;
  std::vector<std::vector<std::size_t>> adjacency(n_nodes);
  for (const Edge& e : edges) {
    if (e.i >= n_nodes || e.j >= n_nodes) return false;
    adjacency[e.i].push_back(e.j);
    adjacency[e.j].push_back(e.i);
  }
  std::vector<bool> seen(n_nodes, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n_nodes;
}

Graph load_edge_probs(const Graph& g, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge probability file " + path.string());

  std::vector<double> probs(g.n_edges(), -1.0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    long long i = 0, j = 0;
    double p = 0.0;
    if (!(fields >> i >> j >> p)) {
      if (line_no == 1) continue;  // header
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected i,j,prob");
    }
    if (i < 0 || j < 0) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": negative index");
    }
    Edge e{static_cast<std::size_t>(std::min(i, j)), static_cast<std::size_t>(std::max(i, j))};
    auto edges = g.edges();
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": edge not in graph");
    }
    auto k = static_cast<std::size_t>(it - edges.begin());
    if (probs[k] >= 0.0) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": duplicate edge");
    }
    probs[k] = p;
  }
  if (std::any_of(probs.begin(), probs.end(), [](double p) { return p < 0.0; })) {
    throw std::runtime_error(path.string() + ": some graph edges have no probability");
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-6) {
    throw std::runtime_error(path.string() + ": probabilities sum to " + std::to_string(total));
  }
  for (double& p : probs) p /= total;
  return g.with_probs(std::move(probs));
}

}  // namespace qgossip
