#include <Eigen/Sparse>
#include <cmath>
#include <limits>
#include <vector>

#include "quasilin/errors.hpp"
#include "quasilin/solver.hpp"

namespace quasilin {

namespace {

constexpr double kRoundoff = std::numeric_limits<double>::epsilon();

// Discrete J and its gradient on the unknown nodes only.
class Functional {
 public:
  Functional(const ProblemSpec& spec, GridPtr grid)
      : spec_(spec), grid_(std::move(grid)), first_(grid_->first_unknown()), m_(grid_->unknown_count()) {
    const Flux linear{2.0, 0.0};
    stiffness_ = flux_jacobian(*grid_, Vector::Zero(grid_->size()), linear);
  }

  [[nodiscard]] int unknowns() const { return m_; }
  [[nodiscard]] const GridPtr& grid() const { return grid_; }

  [[nodiscard]] Vector embed(const Vector& x) const {
    Vector v = Vector::Zero(grid_->size());
    v.segment(first_, m_) = x;
    return v;
  }
  [[nodiscard]] Vector restrict_to_unknowns(const Vector& v) const { return v.segment(first_, m_); }
  [[nodiscard]] GridField field(const Vector& x) const { return GridField(grid_, embed(x), FieldKind::v_field); }

  // +inf outside the domain of the source.
  [[nodiscard]] double value(const Vector& x) const {
    try {
      const double j = energy_functional(field(x), spec_);
      return std::isfinite(j) ? j : std::numeric_limits<double>::infinity();
    } catch (const DomainError&) {
      return std::numeric_limits<double>::infinity();
    } catch (const ValidationError&) {
      return std::numeric_limits<double>::infinity();
    }
  }
  [[nodiscard]] Vector gradient(const Vector& x) const {
    return restrict_to_unknowns(energy_gradient(field(x), spec_)) / grid_->domain().sphere_area();
  }
  // Riesz representative in the discrete H1_0 metric.
  [[nodiscard]] Vector precondition(const Vector& g) const { return solve_spd(stiffness_, g); }
  [[nodiscard]] double inner(const Vector& a, const Vector& b) const {
    // a^T K b for tridiagonal K
    double s = stiffness_.diag.cwiseProduct(a).dot(b);
    for (int j = 0; j + 1 < m_; ++j) s += stiffness_.off[j] * (a[j] * b[j + 1] + a[j + 1] * b[j]);
    return s;
  }
  [[nodiscard]] double norm(const Vector& a) const { return std::sqrt(std::max(inner(a, a), 0.0)); }

 private:
  const ProblemSpec& spec_;
  GridPtr grid_;
  int first_, m_;
  SymmetricTridiagonal<double> stiffness_;
};

// Redistribute images path[lo..hi] (endpoints fixed) to equal H1 arc length.
void reparametrize(std::vector<Vector>& path, int lo, int hi, const Functional& J) {
  if (hi - lo < 2) return;
  std::vector<double> s(hi - lo + 1, 0.0);
  for (int i = lo + 1; i <= hi; ++i) s[i - lo] = s[i - lo - 1] + J.norm(path[i] - path[i - 1]);
  const double total = s.back();
  if (!(total > 0.0)) return;
  std::vector<Vector> out(path.begin() + lo, path.begin() + hi + 1);
  int seg = 0;
  for (int k = 1; k < hi - lo; ++k) {
    const double target = total * k / (hi - lo);
    while (seg + 1 < static_cast<int>(s.size()) - 1 && s[seg + 1] < target) ++seg;
    const double len = s[seg + 1] - s[seg];
    const double w = len > 0.0 ? (target - s[seg]) / len : 0.0;
    out[k] = (1.0 - w) * path[lo + seg] + w * path[lo + seg + 1];
  }
  for (int k = 1; k < hi - lo; ++k) path[lo + k] = out[k];
}

}  // namespace

SolveOutcome newton_polish(const ProblemSpec& spec, const GridField& guess, int max_iterations) {
  spec.validate();
  const GridPtr grid = guess.grid_ptr();
  const RadialGrid& G = *grid;
  const int first = G.first_unknown();
  const int m = G.unknown_count();
  const Flux law = spec.flux();
  const Vector f = sample_weight(G, spec.f);
  const double center_flux = -spec.dirac_mass / G.domain().sphere_area();

  struct Eval {
    Vector g;
    bool finite = false;
    bool converged = false;
    double sup = 0.0;
  };
  const auto evaluate = [&](const Vector& v) {
    Eval r{Vector(m)};
    try {
      const Vector flux = edge_fluxes(G, v, law);
      double load_sup = 0.0;
      Vector load(m), noise(m);
      for (int j = 0; j < m; ++j) {
        const int i = first + j;
        const double inner = i == 0 ? center_flux : flux[i - 1];
        const double mi = G.control_weights()[i];
        load[j] = mi * spec.lambda * f[i] * spec.pair.source(v[i]);
        load_sup = std::max(load_sup, std::abs(load[j]) / mi);
        r.g[j] = inner - flux[i] - load[j];
        noise[j] = 64 * kRoundoff * (std::abs(inner) + std::abs(flux[i]) + std::abs(load[j]));
      }
      r.finite = r.g.allFinite();
      r.converged = r.finite;
      for (int j = 0; j < m && r.finite; ++j) {
        const double mi = G.control_weights()[first + j];
        r.sup = std::max(r.sup, std::abs(r.g[j]) / mi);
        if (std::abs(r.g[j]) > spec.tol.newton * mi * (1.0 + load_sup) + noise[j]) r.converged = false;
      }
    } catch (const DomainError&) {
      r.finite = false;
    }
    return r;
  };

  Vector v = guess.values();
  Eval cur = evaluate(v);
  if (!cur.finite) throw DomainError("newton polish: initial guess outside the domain of the source");
  SolveOutcome out;
  int it = 0;
  for (; it < max_iterations && !cur.converged; ++it) {
    const SymmetricTridiagonal<double> K = flux_jacobian(G, v, law);
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(3 * m);
    for (int j = 0; j < m; ++j) {
      const int i = first + j;
      const double mi = G.control_weights()[i];
      entries.emplace_back(j, j, K.diag[j] - mi * spec.lambda * f[i] * spec.pair.source_derivative(v[i]));
      if (j + 1 < m) {
        entries.emplace_back(j, j + 1, K.off[j]);
        entries.emplace_back(j + 1, j, K.off[j]);
      }
    }
    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(entries.begin(), entries.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) throw SolverError("newton polish: singular Jacobian");
    const Vector d = lu.solve(Vector(-cur.g));
    if (!d.allFinite()) throw SolverError("newton polish: non-finite Newton step");

    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, t *= 0.5) {
      Vector trial = v;
      trial.segment(first, m) += t * d;
      Eval next = evaluate(trial);
      if (next.finite && (next.g.norm() < cur.g.norm() || next.converged)) {
        v = std::move(trial);
        cur = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  out.iterations = it;
  out.field = GridField(grid, v, FieldKind::v_field);
  out.status = cur.converged ? SolveStatus::converged : SolveStatus::max_iter;
  if (!cur.converged) out.message = "newton polish stopped with residual " + std::to_string(cur.sup);
  out.norms = compute_norms(*out.field, spec.p, {1.0, 2.0}, spec.f);
  if (cur.converged) out.residuals = residual(*out.field, spec, Equation::v_equation);
  out.experimental = spec.p != 2.0;
  return out;
}

SolveOutcome mountain_pass_solve(const ProblemSpec& spec, const GridField& v_low, const MountainPassOptions& options) {
  spec.validate();
  if (spec.dirac_mass != 0.0) throw PreconditionError("mountain pass: Dirac masses are not supported");
  if (!is_superlinear(spec.pair))
    throw PreconditionError("mountain pass: g in pair '" + spec.pair.id() + "' is not superlinear");
  if (v_low.kind() != FieldKind::v_field) throw ValidationError("mountain pass: v_low must be a v-field");
  if (options.path_nodes < 3) throw ValidationError("mountain pass: the path needs at least 3 nodes");

  SolveOutcome out;
  out.experimental = spec.p != 2.0;
  if (options.lambda_star && spec.lambda >= *options.lambda_star) {
    out.status = SolveStatus::error;
    out.message = "lambda = " + std::to_string(spec.lambda) + " is not below the lambda* estimate " +
                  std::to_string(*options.lambda_star);
    return out;
  }

  const Functional J(spec, v_low.grid_ptr());
  const RadialGrid& G = *J.grid();
  const Vector low = J.restrict_to_unknowns(v_low.values());
  const double j_low = J.value(low);

  // Positive profile: torsion function scaled to sup 1.
  Vector ones = Vector::Ones(G.size());
  Vector e = inner_solve(G, ones, spec.p, 0.0, InnerSolveOptions::from(spec.tol)).values;
  e /= e.maxCoeff();
  const Vector profile = J.restrict_to_unknowns(e);

  Vector high;
  for (double t = 1.0;; t *= 2.0) {
    const Vector candidate = low + t * profile;
    if (candidate.maxCoeff() > spec.tol.blowup) {
      out.status = SolveStatus::error;
      out.message = "no mountain geometry detected below the blow-up cap";
      return out;
    }
    const double jc = J.value(candidate);
    if (std::isfinite(jc) && jc < j_low) {
      high = candidate;
      break;
    }
  }

  const int P = options.path_nodes;
  std::vector<Vector> path(P);
  for (int k = 0; k < P; ++k) path[k] = low + (double(k) / (P - 1)) * (high - low);

  int climb = 0;
  double climb_gradient = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::vector<double> energy(P);
    for (int k = 0; k < P; ++k) energy[k] = J.value(path[k]);
    climb = 1;
    for (int k = 2; k < P - 1; ++k)
      if (energy[k] > energy[climb]) climb = k;

    const Vector g = J.gradient(path[climb]);
    const Vector d = J.precondition(g);
    climb_gradient = std::sqrt(std::max(g.dot(d), 0.0));
    if (climb_gradient <= options.gradient_tol) break;

    // Climbing image: ascend along the tangent, descend across it.
    Vector tangent = path[climb + 1] - path[climb - 1];
    const double tn = J.norm(tangent);
    if (tn > 0.0) tangent /= tn;
    const Vector climbed = path[climb] - options.step * (d - 2.0 * J.inner(d, tangent) * tangent);

    for (int k = 1; k < P - 1; ++k) {
      if (k == climb) continue;
      Vector next = path[k] - options.step * J.precondition(J.gradient(path[k]));
      if (std::isfinite(J.value(next))) path[k] = std::move(next);
    }
    if (!std::isfinite(J.value(climbed))) {
      out.status = SolveStatus::error;
      out.message = "climbing image left the domain of the source";
      return out;
    }
    path[climb] = climbed;
    reparametrize(path, 0, climb, J);
    reparametrize(path, climb, P - 1, J);
  }

  SolveOutcome polished = newton_polish(spec, J.field(path[climb]), 60);
  polished.iterations += it;
  polished.experimental = out.experimental;
  polished.metrics.emplace_back("string_iterations", it);
  polished.metrics.emplace_back("climbing_gradient", climb_gradient);
  polished.metrics.emplace_back("energy_low", j_low);
  if (!polished.converged()) {
    polished.status = SolveStatus::error;
    polished.message = "newton polish of the climbing image failed: " + polished.message;
    return polished;
  }
  const double j_second = energy_functional(*polished.field, spec);
  polished.metrics.emplace_back("energy_second", j_second);
  const double distance = (polished.field->values() - v_low.values()).cwiseAbs().maxCoeff();
  polished.metrics.emplace_back("distance_from_low", distance);
  if (distance < 10 * spec.tol.fixed_point) {
    polished.status = SolveStatus::error;
    polished.message = "critical point coincides with v_low";
  }
  return polished;
}

}  // namespace quasilin
