#pragma once

#include <compare>
#include <limits>
#include <string>

namespace quasilin {

/// A value of [0, +inf].
///
/// Arithmetic is total on this set: sums and products of nonnegative
/// extended reals are again nonnegative extended reals, with the measure
/// theory convention 0 * inf = 0. There is no subtraction. Constructing
/// from a negative or NaN double throws ValidationError.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  explicit ExtReal(double v);

  static constexpr ExtReal infinity() { return ExtReal(Tag{}); }

  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }
  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }

  /// The finite value; +inf as a double for the infinite element.
  [[nodiscard]] constexpr double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b);
  friend ExtReal operator*(ExtReal a, ExtReal b);
  friend bool operator==(ExtReal a, ExtReal b) = default;
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
    return a.value() <=> b.value();
  }

  [[nodiscard]] std::string to_string() const;

 private:
  struct Tag {};
  constexpr explicit ExtReal(Tag) : infinite_(true) {}

  double value_ = 0.0;
  bool infinite_ = false;
};

/// exp on [-inf, +inf] restricted to arguments whose image is in [0, +inf]:
/// exp(+inf) = +inf, overflow maps to +inf.
ExtReal ext_exp(double x);

/// exp of an extended real exponent (exp(+inf) = +inf).
ExtReal ext_exp(ExtReal x);

}  // namespace quasilin
