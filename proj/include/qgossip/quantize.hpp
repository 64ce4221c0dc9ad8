#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "qgossip/dyadic.hpp"
#include "qgossip/rng.hpp"

namespace qgossip {

enum class QuantizerKind {
  Deterministic,        ///< nearest integer, halves rounded up
  Probabilistic,        ///< unbiased random rounding
  Floor,
  Ceil,
  TieAlternating,       ///< nearest integer, halves rounded to the odd neighbour
  BiasedProbabilistic,  ///< random rounding, halves rounded up with probability `bias`
};

/// Uniform quantizer q^(step)(x) = step * q(x / step).
struct QuantizerSpec {
  QuantizerKind kind = QuantizerKind::Deterministic;
  double step = 1.0;
  double bias = 0.5;  // BiasedProbabilistic only

  /// Throws std::invalid_argument on step <= 0 or bias outside (0, 1).
  void validate() const;
  bool is_random() const {
    return kind == QuantizerKind::Probabilistic || kind == QuantizerKind::BiasedProbabilistic;
  }
};

/// Config spelling: det | prob | floor | ceil | tie_alt | biased:<p>.
QuantizerSpec parse_quantizer(std::string_view text, double step = 1.0);
std::string quantizer_name(const QuantizerSpec& spec);

/// Nearest integer n with x in [n - 1/2, n + 1/2), i.e. floor(x + 1/2).
std::int64_t quantize_det(double x);

/// floor(x) with probability ceil(x) - x, ceil(x) with probability x - floor(x).
/// Always consumes exactly one uniform draw: returns ceil(x) iff u < x - floor(x).
std::int64_t quantize_prob(double x, Rng& rng);

/// Integer level q(x / step) of the unit quantizer selected by `spec`.
/// Random variants consume exactly one draw; deterministic ones consume none.
std::int64_t quantize_level(const QuantizerSpec& spec, double x, Rng& rng);

/// step * q(x / step).
inline double quantize(const QuantizerSpec& spec, double x, Rng& rng) {
  return spec.step * static_cast<double>(quantize_level(spec, x, rng));
}

/// Exact counterpart of quantize_level for unit step. Throws
/// std::invalid_argument when spec.step != 1.
Dyadic quantize_exact(const QuantizerSpec& spec, const Dyadic& x, Rng& rng);

}  // namespace qgossip
