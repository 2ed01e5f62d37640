#include "quasilin/scalar_function.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "quasilin/errors.hpp"

namespace quasilin {

ScalarFunction ScalarFunction::closed_form(std::string name, Map f, ExtReal endpoint,
                                           Map derivative) {
  ScalarFunction s;
  s.kind_ = Kind::closed_form;
  s.name_ = std::move(name);
  s.f_ = std::move(f);
  s.endpoint_ = endpoint;
  s.derivative_ = std::move(derivative);
  return s;
}

ScalarFunction ScalarFunction::constant(double c) {
  std::ostringstream name;
  name << "const(" << c << ")";
  auto s = closed_form(name.str(), [c](double) { return c; }, ExtReal::infinity(),
                       [](double) { return 0.0; });
  s.constant_ = c;
  return s;
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) throw ValidationError("tabulated function: column lengths differ");
  if (x.size() < 2) throw ValidationError("tabulated function: need at least two samples");
  if (x.front() != 0.0) throw ValidationError("tabulated function: abscissae must start at 0");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1]))
      throw ValidationError("tabulated function: abscissae must be strictly increasing (row " +
                            std::to_string(i + 1) + ")");
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!std::isfinite(y[i]))
      throw ValidationError("tabulated function: non-finite value at row " + std::to_string(i + 1));
  ScalarFunction s;
  s.kind_ = Kind::tabulated;
  s.name_ = "tabulated";
  s.endpoint_ = ExtReal(x.back());
  s.x_ = std::move(x);
  s.y_ = std::move(y);
  return s;
}

ScalarFunction ScalarFunction::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open CSV file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path.string() + ": empty file, header row required");
  {
    // The header must not parse as two numbers.
    std::istringstream hs(line);
    double a = 0, b = 0;
    char comma = 0;
    if ((hs >> a >> comma >> b) && comma == ',')
      throw ValidationError(path.string() + ":1: header row required");
  }
  std::vector<double> x, y;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0, b = 0;
    std::string rest;
    if (!(ls >> a >> b) || (ls >> rest))
      throw ValidationError(path.string() + ":" + std::to_string(lineno) +
                            ": expected two numeric columns");
    x.push_back(a);
    y.push_back(b);
  }
  auto s = tabulated(std::move(x), std::move(y));
  s.name_ = "csv:" + path.filename().string();
  return s;
}

bool ScalarFunction::in_domain(double t) const {
  if (!(t >= 0.0)) return false;
  if (kind_ == Kind::tabulated) return t <= x_.back();
  return endpoint_.is_infinite() || t < endpoint_.value();
}

double ScalarFunction::interpolate(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  if (it == x_.end()) return y_.back();
  const auto j = static_cast<std::size_t>(it - x_.begin());
  const double w = (t - x_[j - 1]) / (x_[j] - x_[j - 1]);
  return (1.0 - w) * y_[j - 1] + w * y_[j];
}

double ScalarFunction::operator()(double t) const {
  if (!in_domain(t)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name_ << ": argument " << t << " outside [0, " << endpoint_.to_string() << ")";
    throw DomainError(msg.str());
  }
  const double v = kind_ == Kind::tabulated ? interpolate(t) : f_(t);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << name_ << ": non-finite value at " << t;
    throw InfiniteValueError(msg.str());
  }
  return v;
}

double ScalarFunction::derivative(double t) const {
  if (derivative_) {
    if (!in_domain(t)) throw DomainError(name_ + ": derivative argument outside the domain");
    return derivative_(t);
  }
  const double step = 1e-6 * (1.0 + t);
  const bool room_right = in_domain(t + step);
  if (t - step < 0.0 || !in_domain(t - step)) {
    if (!room_right) throw DomainError(name_ + ": no room for a finite difference");
    return ((*this)(t + step) - (*this)(t)) / step;
  }
  if (!room_right) return ((*this)(t) - (*this)(t - step)) / step;
  return ((*this)(t + step) - (*this)(t - step)) / (2 * step);
}

}  // namespace quasilin
