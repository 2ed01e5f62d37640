#include "quasilin/extended_real.hpp"

#include <cmath>

#include "quasilin/errors.hpp"

namespace quasilin {

ExtReal::ExtReal(double v) {
  if (std::isnan(v) || v < 0.0) throw ValidationError("ExtReal: value must lie in [0, +inf]");
  if (std::isinf(v)) {
    infinite_ = true;
  } else {
    value_ = v;
  }
}

ExtReal operator+(ExtReal a, ExtReal b) {
  if (a.infinite_ || b.infinite_) return ExtReal::infinity();
  return ExtReal(a.value_ + b.value_);
}

ExtReal operator*(ExtReal a, ExtReal b) {
  if ((a.is_finite() && a.value_ == 0.0) || (b.is_finite() && b.value_ == 0.0)) return ExtReal(0.0);
  if (a.infinite_ || b.infinite_) return ExtReal::infinity();
  return ExtReal(a.value_ * b.value_);
}

std::string ExtReal::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

ExtReal ext_exp(double x) {
  if (std::isnan(x)) throw ValidationError("ext_exp: NaN argument");
  const double e = std::exp(x);
  return std::isinf(e) ? ExtReal::infinity() : ExtReal(e);
}

ExtReal ext_exp(ExtReal x) { return x.is_infinite() ? ExtReal::infinity() : ext_exp(x.value()); }

}  // namespace quasilin
