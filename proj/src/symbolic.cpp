#include "qgossip/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgossip {

std::int64_t g3(std::int64_t h, std::int64_t k, Rng& rng) {
  const bool xi1 = rng.coin();
  const bool xi2 = rng.coin();
  return g3(h, k, xi1, xi2);
}

SymbolicVector lift(std::span<const double> x) {
  SymbolicVector n(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) throw std::invalid_argument("lift: non-finite state");
    n[i] = static_cast<std::int64_t>(std::floor(2.0 * x[i]));
  }
  return n;
}

SymbolicVector lift(std::span<const Dyadic> x) {
  SymbolicVector n(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) n[i] = x[i].twice().floor_i64();
  return n;
}

bool in_set_R(std::span<const std::int64_t> n) {
  if (n.empty()) return true;
  const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
  return *hi - *lo <= 1;
}

bool in_set_A(std::span<const std::int64_t> n) {
  if (n.empty()) return true;
  if (parity(n.front()) != 0) return false;
  return std::all_of(n.begin(), n.end(), [&](std::int64_t v) { return v == n.front(); });
}

void symbolic_step(SymbolicMap map, std::span<std::int64_t> n, Edge edge, Rng& rng) {
  if (edge.i == edge.j || edge.i >= n.size() || edge.j >= n.size()) {
    throw std::out_of_range("symbolic_step: edge endpoint out of range");
  }
  if (edge.i > edge.j) std::swap(edge.i, edge.j);
  std::int64_t& h = n[edge.i];
  std::int64_t& k = n[edge.j];
  switch (map) {
    case SymbolicMap::G1: {
      const auto [a, b] = g1(h, k);
      h = a;
      k = b;
      return;
    }
    case SymbolicMap::G2: {
      h = k = g2(h, k);
      return;
    }
    case SymbolicMap::G3: {
      h = k = g3(h, k, rng);
      return;
    }
    case SymbolicMap::G4: {
      const auto [a, b] = g4(h, k);
      h = a;
      k = b;
      return;
    }
    case SymbolicMap::G5: {
      h = k = g5(h, k);
      return;
    }
  }
  throw std::invalid_argument("unknown symbolic map");
}

SymbolicVector symbolic_step(SymbolicMap map, const SymbolicVector& n, Edge edge, Rng& rng) {
  SymbolicVector next = n;
  symbolic_step(map, std::span<std::int64_t>(next), edge, rng);
  return next;
}

Spread spread(std::span<const std::int64_t> n) {
  if (n.empty()) throw std::invalid_argument("spread of an empty vector");
  const auto [lo, hi] = std::minmax_element(n.begin(), n.end());
  return {*lo, *hi, *hi - *lo};
}

}  // namespace qgossip
