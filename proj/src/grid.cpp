#include "quasilin/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "quasilin/errors.hpp"

namespace quasilin {

RadialDomain RadialDomain::interval(double a, double b) {
  if (!(a < b)) throw ValidationError("interval domain requires a < b");
  return RadialDomain(Shape::interval, 1, a, b);
}

RadialDomain RadialDomain::ball(double radius, int dim) {
  if (!(radius > 0.0)) throw ValidationError("ball domain requires a positive radius");
  if (dim < 2) throw ValidationError("ball domain requires dimension N >= 2");
  return RadialDomain(Shape::ball, dim, 0.0, radius);
}

double unit_sphere_area(int dim) {
  // 2 pi^{N/2} / Gamma(N/2)
  return 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

double RadialDomain::sphere_area() const { return is_ball() ? unit_sphere_area(dim_) : 1.0; }

double RadialDomain::measure() const {
  if (!is_ball()) return right_ - left_;
  return sphere_area() * std::pow(right_, dim_) / dim_;
}

std::string RadialDomain::describe() const {
  std::ostringstream s;
  if (is_ball())
    s << "ball(R=" << right_ << ", N=" << dim_ << ")";
  else
    s << "interval(" << left_ << ", " << right_ << ")";
  return s.str();
}

GridPtr build_grid(const RadialDomain& domain, int n) {
  if (n < 3) throw ValidationError("grid needs at least 3 nodes");
  auto grid = std::shared_ptr<RadialGrid>(new RadialGrid(domain));
  const double a = domain.left();
  const double b = domain.right();
  const double h = (b - a) / (n - 1);
  const int N = domain.dim();
  grid->h_ = h;
  grid->nodes_.resize(n);
  for (int i = 0; i < n; ++i) grid->nodes_[i] = i == n - 1 ? b : a + i * h;

  const auto radial_power = [&](double r, int k) { return domain.is_ball() ? std::pow(r, k) : 1.0; };

  grid->edge_weights_.resize(n - 1);
  for (int e = 0; e < n - 1; ++e)
    grid->edge_weights_[e] = radial_power(0.5 * (grid->nodes_[e] + grid->nodes_[e + 1]), N - 1);

  grid->control_weights_.resize(n);
  // Exact shell volumes (r_{i+1/2}^N - r_{i-1/2}^N) / N on balls; the
  // nodal r_i^{N-1} h would make the stencil inconsistent at r = O(h).
  for (int i = 0; i < n; ++i) {
    if (!domain.is_ball()) {
      grid->control_weights_[i] = h;
      continue;
    }
    const double lo = i == 0 ? 0.0 : grid->nodes_[i] - h / 2;
    const double hi = grid->nodes_[i] + h / 2;
    grid->control_weights_[i] = (std::pow(hi, N) - std::pow(lo, N)) / N;
  }

  // Exact integrals of the hat functions against sphere_area r^{N-1}.
  grid->quadrature_weights_ = Vector::Zero(n);
  const double area = domain.sphere_area();
  for (int e = 0; e < n - 1; ++e) {
    const double lo = grid->nodes_[e];
    const double hi = grid->nodes_[e + 1];
    double m0, m1;  // int r^{N-1}, int r^N over the cell (weight 1 on intervals)
    if (domain.is_ball()) {
      m0 = (std::pow(hi, N) - std::pow(lo, N)) / N;
      m1 = (std::pow(hi, N + 1) - std::pow(lo, N + 1)) / (N + 1);
    } else {
      m0 = hi - lo;
      m1 = (hi * hi - lo * lo) / 2;
    }
    const double len = hi - lo;
    grid->quadrature_weights_[e] += area * (hi * m0 - m1) / len;
    grid->quadrature_weights_[e + 1] += area * (m1 - lo * m0) / len;
  }
  return grid;
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::u_field: return "u";
    case FieldKind::v_field: return "v";
    case FieldKind::generic: return "U";
  }
  return "U";
}

GridField::GridField(GridPtr grid, Vector values, FieldKind kind)
    : grid_(std::move(grid)), values_(std::move(values)), kind_(kind) {
  if (!grid_) throw ValidationError("GridField: null grid");
  if (values_.size() != grid_->size())
    throw ValidationError("GridField: " + std::to_string(values_.size()) + " values for " +
                          std::to_string(grid_->size()) + " nodes");
  for (int i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw ValidationError("GridField: non-finite value at node " + std::to_string(i));
    if (grid_->is_dirichlet(i) && values_[i] != 0.0)
      throw ValidationError("GridField: Dirichlet node " + std::to_string(i) + " must be 0");
  }
}

GridField GridField::zeros(GridPtr grid, FieldKind kind) {
  const int n = grid->size();
  return GridField(std::move(grid), Vector::Zero(n), kind);
}

double GridField::sup_norm() const { return values_.cwiseAbs().maxCoeff(); }

}  // namespace quasilin
