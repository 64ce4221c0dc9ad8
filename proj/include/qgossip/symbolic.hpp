#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qgossip/dyadic.hpp"
#include "qgossip/graph.hpp"
#include "qgossip/rng.hpp"

namespace qgossip {

/// Integer image n_i = floor(2 x_i) of a state.
using SymbolicVector = std::vector<std::int64_t>;

// Floor semantics for negative operands throughout; truncating division would
// break every property on the negative half-line.

constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

constexpr std::int64_t floor_half(std::int64_t h) { return floor_div(h, 2); }
constexpr std::int64_t ceil_half(std::int64_t h) { return h - floor_half(h); }
/// Remainder of h modulo 2, in {0, 1}.
constexpr std::int64_t parity(std::int64_t h) { return h - 2 * floor_half(h); }

using SymbolicPair = std::pair<std::int64_t, std::int64_t>;

/// Compensating and partially quantized rules with the nearest-integer quantizer.
constexpr SymbolicPair g1(std::int64_t h, std::int64_t k) {
  return {floor_half(h) + ceil_half(k), floor_half(k) + ceil_half(h)};
}

/// Totally quantized rule with the nearest-integer quantizer (common value).
constexpr std::int64_t g2(std::int64_t h, std::int64_t k) { return ceil_half(h) + ceil_half(k); }

/// Totally quantized rule with random rounding, for explicit coin outcomes.
constexpr std::int64_t g3(std::int64_t h, std::int64_t k, bool xi1, bool xi2) {
  return g2(h, k) - (xi1 ? parity(h) : 0) - (xi2 ? parity(k) : 0);
}
/// Draws xi1 then xi2 from `rng` (two draws always).
std::int64_t g3(std::int64_t h, std::int64_t k, Rng& rng);

/// Compensating rule with the rounding-down quantizer.
constexpr SymbolicPair g4(std::int64_t h, std::int64_t k) {
  return {floor_half(k) + ceil_half(h), floor_half(h) + ceil_half(k)};
}

/// Totally and partially quantized rules with the rounding-down quantizer.
constexpr std::int64_t g5(std::int64_t h, std::int64_t k) { return floor_half(h) + floor_half(k); }

enum class SymbolicMap { G1, G2, G3, G4, G5 };

SymbolicVector lift(std::span<const double> x);
SymbolicVector lift(std::span<const Dyadic> x);

/// max(n) - min(n) <= 1 (at most two consecutive levels). True when empty.
bool in_set_R(std::span<const std::int64_t> n);
/// All entries equal and even. True when empty.
bool in_set_A(std::span<const std::int64_t> n);

/// Applies the pair map at edge (i, j), i < j; other entries unchanged.
/// G3 consumes two draws (lower index first); the others consume none.
void symbolic_step(SymbolicMap map, std::span<std::int64_t> n, Edge edge, Rng& rng);
SymbolicVector symbolic_step(SymbolicMap map, const SymbolicVector& n, Edge edge, Rng& rng);

struct Spread {
  std::int64_t min = 0;
  std::int64_t max = 0;
  std::int64_t width = 0;  // max - min
};

/// Throws std::invalid_argument on an empty vector.
Spread spread(std::span<const std::int64_t> n);

}  // namespace qgossip
