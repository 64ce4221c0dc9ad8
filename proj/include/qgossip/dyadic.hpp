#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace qgossip {

/// Exact binary fraction mantissa / 2^exponent, kept normalized (odd mantissa
/// whenever exponent > 0).
///
/// Every finite double is a Dyadic, and the gossip updates only add, subtract
/// and halve, so a trajectory started from doubles stays exactly representable.
class Dyadic {
 public:
  using Int = boost::multiprecision::cpp_int;

  Dyadic() = default;
  explicit Dyadic(std::int64_t value) : mantissa_(value) {}
  Dyadic(Int mantissa, unsigned exponent);

  static Dyadic from_double(double value);

  double to_double() const;
  std::string to_string() const;

  const Int& mantissa() const { return mantissa_; }
  unsigned exponent() const { return exponent_; }
  bool is_integer() const { return exponent_ == 0; }

  Dyadic half() const { return Dyadic(mantissa_, exponent_ + 1); }
  Dyadic twice() const;

  Int floor() const;
  Int ceil() const;
  /// Throws std::overflow_error if the result does not fit.
  std::int64_t floor_i64() const;
  std::int64_t ceil_i64() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.mantissa_, a.exponent_); }
  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend bool operator<(const Dyadic& a, const Dyadic& b);
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return b < a; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return !(b < a); }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return !(a < b); }

 private:
  void normalize();

  Int mantissa_{0};
  unsigned exponent_ = 0;
};

}  // namespace qgossip
