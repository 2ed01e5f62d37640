#include "quasilin/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace quasilin {

namespace {

struct ShellSequence {
  std::vector<double> contributions;
  double head = 0.0;  // integral before the first shell
  bool overflowed = false;
};

ShellSequence shell_contributions(const std::function<double(double)>& f, double endpoint,
                                  int shells) {
  ShellSequence seq;
  QuadratureOptions opt;
  // Shell ratios only need a few digits; integrands built from nested
  // quadratures or numerical derivatives carry noise well above 1e-12.
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-9;
  opt.max_subdivisions = 2000;
  opt.throw_at_cap = false;
  try {
    if (std::isinf(endpoint)) {
      seq.head = integrate_adaptive(f, 0.0, 1.0, opt);
      double a = 1.0;
      for (int k = 0; k < shells; ++k) {
        seq.contributions.push_back(integrate_adaptive(f, a, 2 * a, opt));
        a *= 2;
      }
    } else {
      seq.head = integrate_adaptive(f, 0.0, endpoint / 2, opt);
      for (int k = 1; k <= shells; ++k) {
        const double a = endpoint - endpoint * std::ldexp(1.0, -k);
        const double b = endpoint - endpoint * std::ldexp(1.0, -k - 1);
        if (!(b > a)) break;
        seq.contributions.push_back(integrate_adaptive(f, a, b, opt));
      }
    }
  } catch (const InfiniteValueError&) {
    seq.overflowed = true;
  } catch (const DomainError&) {
    seq.overflowed = true;
  }
  return seq;
}

}  // namespace

ImproperIntegral classify_improper(const std::function<double(double)>& f, double endpoint,
                                   int shells) {
  if (!std::isinf(endpoint)) shells = std::min(shells, 40);
  const ShellSequence seq = shell_contributions(f, endpoint, shells);
  // A nonnegative integrand that overflows on the way out has an infinite integral.
  if (seq.overflowed) return {Convergence::divergent, std::numeric_limits<double>::infinity()};

  const auto& d = seq.contributions;
  double sum = seq.head;
  for (double x : d) sum += x;

  constexpr int kWindow = 8;
  const int n = static_cast<int>(d.size());
  if (n < kWindow + 1) return {};

  bool all_zero_tail = true;
  for (int i = n - kWindow; i < n; ++i) all_zero_tail = all_zero_tail && d[i] == 0.0;
  if (all_zero_tail) return {Convergence::convergent, sum};

  bool geometric = true;
  bool flat = true;
  double worst_ratio = 0.0;
  for (int i = n - kWindow; i < n; ++i) {
    if (d[i - 1] <= 0.0) {
      geometric = geometric && d[i] <= 0.0;
      flat = false;
      continue;
    }
    const double r = d[i] / d[i - 1];
    worst_ratio = std::max(worst_ratio, r);
    geometric = geometric && r <= 0.9;
    flat = flat && r >= 0.98;
  }
  if (geometric) {
    const double tail = d.back() * worst_ratio / (1.0 - worst_ratio);
    return {Convergence::convergent, sum + tail};
  }
  if (flat) return {Convergence::divergent, std::numeric_limits<double>::infinity()};
  return {};
}

}  // namespace quasilin
