#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quasilin/extended_real.hpp"

namespace quasilin {

/// A real function on [0, endpoint), either closed form or tabulated.
///
/// Closed forms carry a name for reporting and, optionally, an exact
/// derivative. Tabulated functions interpolate linearly between strictly
/// increasing abscissae that start at 0; their endpoint is the last
/// abscissa and evaluation exactly at it is allowed (the table is closed).
class ScalarFunction {
 public:
  enum class Kind { closed_form, tabulated };
  using Map = std::function<double(double)>;

  static ScalarFunction closed_form(std::string name, Map f, ExtReal endpoint = ExtReal::infinity(),
                                    Map derivative = {});
  static ScalarFunction constant(double c);
  static ScalarFunction tabulated(std::vector<double> abscissae, std::vector<double> values);

  /// Two-column CSV "abscissa,value" with a mandatory header row.
  static ScalarFunction from_csv(const std::filesystem::path& path);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] ExtReal endpoint() const { return endpoint_; }
  [[nodiscard]] bool has_exact_derivative() const { return static_cast<bool>(derivative_); }
  [[nodiscard]] std::optional<double> constant_value() const { return constant_; }

  /// Throws DomainError outside the domain; InfiniteValueError if the
  /// evaluator returns a non-finite value.
  double operator()(double t) const;

  /// Exact derivative when available, else a centered difference
  /// (one-sided at 0) with step 1e-6 * (1 + t).
  [[nodiscard]] double derivative(double t) const;

  [[nodiscard]] bool in_domain(double t) const;

  [[nodiscard]] const std::vector<double>& abscissae() const { return x_; }
  [[nodiscard]] const std::vector<double>& values() const { return y_; }

 private:
  ScalarFunction() = default;
  double interpolate(double t) const;

  Kind kind_ = Kind::closed_form;
  std::string name_;
  ExtReal endpoint_ = ExtReal::infinity();
  Map f_;
  Map derivative_;
  std::optional<double> constant_;
  std::vector<double> x_, y_;
};

}  // namespace quasilin
