#include "qgossip/quantize.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qgossip {

namespace {

// Beyond 2^53 doubles no longer resolve integers, so quantization is meaningless.
constexpr double kMaxMagnitude = 0x1.0p53;

void check_input(double x) {
  if (!std::isfinite(x) || std::abs(x) >= kMaxMagnitude) {
    throw std::invalid_argument("quantizer input must be finite and below 2^53 in magnitude");
  }
}

std::int64_t tie_alternating(double x) {
  const double lower = std::floor(x);
  if (x - lower == 0.5) {
    const auto y = static_cast<std::int64_t>(lower);
    return (y % 2 != 0) ? y : y + 1;
  }
  return quantize_det(x);
}

std::int64_t random_round(double x, double up_probability_at_half, Rng& rng) {
  const double lower = std::floor(x);
  const double frac = x - lower;  // exact for |x| < 2^53
  const double u = rng.uniform();
  const double p_up = (frac == 0.5) ? up_probability_at_half : frac;
  return static_cast<std::int64_t>(lower) + (u < p_up ? 1 : 0);
}

}  // namespace

void QuantizerSpec::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("quantizer step must be positive");
  }
  if (kind == QuantizerKind::BiasedProbabilistic && !(bias > 0.0 && bias < 1.0)) {
    throw std::invalid_argument("biased quantizer needs p in (0, 1)");
  }
}

QuantizerSpec parse_quantizer(std::string_view text, double step) {
  QuantizerSpec spec;
  spec.step = step;
  if (text == "det") {
    spec.kind = QuantizerKind::Deterministic;
  } else if (text == "prob") {
    spec.kind = QuantizerKind::Probabilistic;
  } else if (text == "floor") {
    spec.kind = QuantizerKind::Floor;
  } else if (text == "ceil") {
    spec.kind = QuantizerKind::Ceil;
  } else if (text == "tie_alt") {
    spec.kind = QuantizerKind::TieAlternating;
  } else if (text.starts_with("biased:")) {
    spec.kind = QuantizerKind::BiasedProbabilistic;
    const std::string number(text.substr(7));
    std::size_t used = 0;
    try {
      spec.bias = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size()) {
      throw std::invalid_argument("bad biased quantizer parameter '" + number + "'");
    }
  } else {
    throw std::invalid_argument("unknown quantizer '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

std::string quantizer_name(const QuantizerSpec& spec) {
  switch (spec.kind) {
    case QuantizerKind::Deterministic: return "det";
    case QuantizerKind::Probabilistic: return "prob";
    case QuantizerKind::Floor: return "floor";
    case QuantizerKind::Ceil: return "ceil";
    case QuantizerKind::TieAlternating: return "tie_alt";
    case QuantizerKind::BiasedProbabilistic: {
      char buf[64];
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, spec.bias);
      return "biased:" + std::string(buf, ec == std::errc() ? end : buf);
    }
  }
  throw std::invalid_argument("unknown quantizer kind");
}

std::int64_t quantize_det(double x) {
  check_input(x);
  const double lower = std::floor(x);
  // x - lower is exact here; avoids the double rounding of floor(x + 0.5).
  return static_cast<std::int64_t>(lower) + (x - lower >= 0.5 ? 1 : 0);
}

std::int64_t quantize_prob(double x, Rng& rng) {
  check_input(x);
  const double lower = std::floor(x);
  const double u = rng.uniform();
  return static_cast<std::int64_t>(lower) + (u < x - lower ? 1 : 0);
}

std::int64_t quantize_level(const QuantizerSpec& spec, double x, Rng& rng) {
  check_input(x);
  const double scaled = (spec.step == 1.0) ? x : x / spec.step;
  check_input(scaled);
  switch (spec.kind) {
    case QuantizerKind::Deterministic: return quantize_det(scaled);
    case QuantizerKind::Probabilistic: return quantize_prob(scaled, rng);
    case QuantizerKind::Floor: return static_cast<std::int64_t>(std::floor(scaled));
    case QuantizerKind::Ceil: return static_cast<std::int64_t>(std::ceil(scaled));
    case QuantizerKind::TieAlternating: return tie_alternating(scaled);
    case QuantizerKind::BiasedProbabilistic: return random_round(scaled, spec.bias, rng);
  }
  throw std::invalid_argument("unknown quantizer kind");
}

Dyadic quantize_exact(const QuantizerSpec& spec, const Dyadic& x, Rng& rng) {
  if (spec.step != 1.0) {
    throw std::invalid_argument("exact quantization supports unit step only");
  }
  const Dyadic lower(x.floor(), 0);
  const Dyadic frac = x - lower;
  const Dyadic one(1);
  const Dyadic half = one.half();
  switch (spec.kind) {
    case QuantizerKind::Deterministic:
      return frac >= half ? lower + one : lower;
    case QuantizerKind::Floor:
      return lower;
    case QuantizerKind::Ceil:
      return frac == Dyadic() ? lower : lower + one;
    case QuantizerKind::TieAlternating: {
      if (frac == half) {
        const bool odd = (lower.mantissa() % 2) != 0;
        return odd ? lower : lower + one;
      }
      return frac >= half ? lower + one : lower;
    }
    case QuantizerKind::Probabilistic:
    case QuantizerKind::BiasedProbabilistic: {
      const Dyadic u = Dyadic::from_double(rng.uniform());
      Dyadic p_up = frac;
      if (spec.kind == QuantizerKind::BiasedProbabilistic && frac == half) {
        p_up = Dyadic::from_double(spec.bias);
      }
      return u < p_up ? lower + one : lower;
    }
  }
  throw std::invalid_argument("unknown quantizer kind");
}

}  // namespace qgossip
