#include "qgossip/dyadic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgossip {

namespace {

using Int = Dyadic::Int;

Int shifted(const Int& value, unsigned bits) {
  if (bits == 0) return value;
  Int result = value;
  result <<= bits;
  return result;
}

std::int64_t to_i64(const Int& value) {
  if (value > std::numeric_limits<std::int64_t>::max() ||
      value < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("Dyadic value does not fit in int64");
  }
  return value.convert_to<std::int64_t>();
}

}  // namespace

Dyadic::Dyadic(Int mantissa, unsigned exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const unsigned low = static_cast<unsigned>(boost::multiprecision::lsb(abs(mantissa_)));
  const unsigned drop = std::min(low, exponent_);
  if (drop > 0) {
    if (mantissa_ < 0) {
      mantissa_ = -mantissa_;
      mantissa_ >>= drop;
      mantissa_ = -mantissa_;
    } else {
      mantissa_ >>= drop;
    }
    exponent_ -= drop;
  }
}

Dyadic Dyadic::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("Dyadic: non-finite value");
  if (value == 0.0) return Dyadic();
  int exp2 = 0;
  const double frac = std::frexp(value, &exp2);  // value = frac * 2^exp2, |frac| in [0.5, 1)
  const auto scaled = static_cast<std::int64_t>(std::ldexp(frac, 53));
  const int shift = exp2 - 53;  // value = scaled * 2^shift
  if (shift >= 0) return Dyadic(shifted(Int(scaled), static_cast<unsigned>(shift)), 0);
  return Dyadic(Int(scaled), static_cast<unsigned>(-shift));
}

double Dyadic::to_double() const {
  if (mantissa_ == 0) return 0.0;
  Int magnitude = abs(mantissa_);
  const unsigned top = static_cast<unsigned>(boost::multiprecision::msb(magnitude));
  long scale = -static_cast<long>(exponent_);
  if (top > 62) {
    magnitude >>= (top - 62);
    scale += static_cast<long>(top - 62);
  }
  const double result = std::ldexp(magnitude.convert_to<double>(), static_cast<int>(scale));
  return mantissa_ < 0 ? -result : result;
}

std::string Dyadic::to_string() const {
  if (exponent_ == 0) return mantissa_.str();
  return mantissa_.str() + "/2^" + std::to_string(exponent_);
}

Dyadic Dyadic::twice() const {
  if (exponent_ > 0) return Dyadic(mantissa_, exponent_ - 1);
  return Dyadic(shifted(mantissa_, 1), 0);
}

Int Dyadic::floor() const {
  if (exponent_ == 0) return mantissa_;
  if (mantissa_ >= 0) {
    Int q = mantissa_;
    q >>= exponent_;
    return q;
  }
  // floor(-a / 2^e) = -ceil(a / 2^e)
  Int q = -mantissa_ + (Int(1) << exponent_) - 1;
  q >>= exponent_;
  return -q;
}

Int Dyadic::ceil() const {
  if (exponent_ == 0) return mantissa_;
  return floor() + 1;
}

std::int64_t Dyadic::floor_i64() const { return to_i64(floor()); }
std::int64_t Dyadic::ceil_i64() const { return to_i64(ceil()); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  return Dyadic(shifted(a.mantissa_, e - a.exponent_) + shifted(b.mantissa_, e - b.exponent_), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

bool operator<(const Dyadic& a, const Dyadic& b) {
  const unsigned e = std::max(a.exponent_, b.exponent_);
  return shifted(a.mantissa_, e - a.exponent_) < shifted(b.mantissa_, e - b.exponent_);
}

}  // namespace qgossip
