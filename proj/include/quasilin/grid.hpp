#pragma once

#include <memory>
#include <string>

#include "quasilin/types.hpp"

namespace quasilin {

/// An interval (a, b) in one dimension or a ball of radius R in R^N, N >= 2,
/// restricted to radially symmetric functions.
class RadialDomain {
 public:
  enum class Shape { interval, ball };

  static RadialDomain interval(double a, double b);
  static RadialDomain ball(double radius, int dim);

  [[nodiscard]] Shape shape() const { return shape_; }
  [[nodiscard]] bool is_ball() const { return shape_ == Shape::ball; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] double left() const { return left_; }
  [[nodiscard]] double right() const { return right_; }

  /// Area of the unit sphere in R^N for a ball; 1 for an interval, whose
  /// measure is plain dx.
  [[nodiscard]] double sphere_area() const;
  [[nodiscard]] double measure() const;
  [[nodiscard]] std::string describe() const;

 private:
  RadialDomain(Shape s, int dim, double left, double right)
      : shape_(s), dim_(dim), left_(left), right_(right) {}
  Shape shape_;
  int dim_;
  double left_, right_;
};

double unit_sphere_area(int dim);

/// Uniform nodes r_0 < ... < r_{n-1} with the last node on the Dirichlet
/// boundary; for an interval the first node is Dirichlet too, for a ball it
/// is the center.
///
/// Three weight families live on the grid:
///   - edge weights a_e = r_{e+1/2}^{N-1} (flux Jacobian at half nodes),
///   - control weights m_i = (r_{i+1/2}^N - r_{i-1/2}^N) / N (h on
///     intervals, (h/2)^N / N at the ball center), used by the operator and
///     the discrete energy,
///   - quadrature weights of the piecewise-linear interpolant against the
///     exact Jacobian sphere_area * r^{N-1}.
class RadialGrid {
 public:
  [[nodiscard]] const RadialDomain& domain() const { return domain_; }
  [[nodiscard]] int size() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] double spacing() const { return h_; }
  [[nodiscard]] const Vector& nodes() const { return nodes_; }
  [[nodiscard]] double node(int i) const { return nodes_[i]; }
  [[nodiscard]] const Vector& edge_weights() const { return edge_weights_; }
  [[nodiscard]] const Vector& control_weights() const { return control_weights_; }
  [[nodiscard]] const Vector& quadrature_weights() const { return quadrature_weights_; }

  [[nodiscard]] bool is_dirichlet(int i) const {
    return i == size() - 1 || (i == 0 && !domain_.is_ball());
  }
  [[nodiscard]] int first_unknown() const { return domain_.is_ball() ? 0 : 1; }
  [[nodiscard]] int last_unknown() const { return size() - 2; }
  [[nodiscard]] int unknown_count() const { return last_unknown() - first_unknown() + 1; }

  friend std::shared_ptr<const RadialGrid> build_grid(const RadialDomain& domain, int n);

 private:
  explicit RadialGrid(const RadialDomain& d) : domain_(d) {}
  RadialDomain domain_;
  double h_ = 0.0;
  Vector nodes_, edge_weights_, control_weights_, quadrature_weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Throws ValidationError for n < 3.
GridPtr build_grid(const RadialDomain& domain, int n);

enum class FieldKind { u_field, v_field, generic };
std::string to_string(FieldKind k);

/// Nodal values on a grid. Values are finite and exactly 0 on Dirichlet
/// nodes; the constructor rejects anything else.
class GridField {
 public:
  GridField(GridPtr grid, Vector values, FieldKind kind = FieldKind::generic);
  static GridField zeros(GridPtr grid, FieldKind kind = FieldKind::generic);

  [[nodiscard]] const RadialGrid& grid() const { return *grid_; }
  [[nodiscard]] const GridPtr& grid_ptr() const { return grid_; }
  [[nodiscard]] const Vector& values() const { return values_; }
  [[nodiscard]] double operator[](int i) const { return values_[i]; }
  [[nodiscard]] FieldKind kind() const { return kind_; }
  [[nodiscard]] int size() const { return static_cast<int>(values_.size()); }
  [[nodiscard]] double sup_norm() const;

 private:
  GridPtr grid_;
  Vector values_;
  FieldKind kind_;
};

/// Samples a function of the radial coordinate at every node, zeroing the
/// Dirichlet nodes.
template <typename F>
GridField sample(GridPtr grid, const F& f, FieldKind kind = FieldKind::generic) {
  Vector v(grid->size());
  for (int i = 0; i < grid->size(); ++i) v[i] = grid->is_dirichlet(i) ? 0.0 : f(grid->node(i));
  return GridField(std::move(grid), std::move(v), kind);
}

}  // namespace quasilin
