#include <cmath>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"

namespace quasilin {

UniquenessReport uniqueness_probe(const ProblemSpec& spec, const std::vector<GridField>& starts,
                                  const UniquenessOptions& options) {
  spec.validate();
  if (!options.force) {
    for (double s : {0.5, 1.0, 4.0, 32.0})
      if (std::abs(spec.pair.g()(s) - s) > 1e-12 * (1.0 + s))
        throw PreconditionError("uniqueness probe is meant for g(v) = v; pass force to probe pair '" +
                                spec.pair.id() + "'");
  }
  if (options.lambda1 && spec.lambda >= *options.lambda1)
    throw PreconditionError("uniqueness probe needs lambda < lambda_1");
  if (starts.empty()) throw ValidationError("uniqueness probe needs at least one start");

  UniquenessReport rep;
  std::vector<const GridField*> limits;
  for (const GridField& start : starts) {
    UniquenessStart s;
    try {
      SolveOutcome o = minimal_solution(spec, &start);
      s.status = o.status;
      s.iterations = o.iterations;
      s.message = o.message;
      if (o.converged()) s.limit = o.field;
    } catch (const std::exception& e) {
      s.status = SolveStatus::error;
      s.message = e.what();
    }
    rep.starts.push_back(std::move(s));
  }
  for (const auto& s : rep.starts)
    if (s.limit) limits.push_back(&*s.limit);

  const int k = static_cast<int>(limits.size());
  rep.distances.assign(k, std::vector<double>(k, 0.0));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      rep.distances[a][b] = (limits[a]->values() - limits[b]->values()).cwiseAbs().maxCoeff();

  // Greedy clustering: a limit opens a new class unless it is close to an earlier representative.
  std::vector<int> representatives;
  for (int a = 0; a < k; ++a) {
    bool close = false;
    for (int b : representatives) close = close || rep.distances[a][b] <= options.threshold;
    if (!close) representatives.push_back(a);
  }
  rep.distinct_limits = static_cast<int>(representatives.size());
  rep.unique = rep.distinct_limits == 1;
  return rep;
}

}  // namespace quasilin
