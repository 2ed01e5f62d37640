#include "app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "quasilin/io.hpp"
#include "quasilin/solver.hpp"

namespace quasilin::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

class Reader {
 public:
  Reader(fs::path path, std::string text) : path_(std::move(path)), text_(std::move(text)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw ConfigError(path_.string() + ":" + std::to_string(line_of(key)) + ": " + message);
  }

  // Line of the first occurrence of "key" in the text; 1 when absent.
  [[nodiscard]] int line_of(const std::string& key) const {
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string::npos) return 1;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + pos, '\n'));
  }

  void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) const {
    if (!obj.is_object()) fail(where, "'" + where + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key())) fail(it.key(), "unknown key '" + it.key() + "' in " + where);
  }

  [[nodiscard]] double number(const json& obj, const std::string& key) const {
    const json& v = obj.at(key);
    if (v.is_string() && (v == "inf" || v == "infinity")) return std::numeric_limits<double>::infinity();
    if (!v.is_number()) fail(key, "'" + key + "' must be a number");
    return v.get<double>();
  }
  [[nodiscard]] std::optional<double> maybe_number(const json& obj, const std::string& key) const {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, key);
  }
  [[nodiscard]] long long integer(const json& obj, const std::string& key) const {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
    return v.get<long long>();
  }
  [[nodiscard]] std::string string(const json& obj, const std::string& key) const {
    const json& v = obj.at(key);
    if (!v.is_string()) fail(key, "'" + key + "' must be a string");
    return v.get<std::string>();
  }
  [[nodiscard]] const fs::path& path() const { return path_; }

 private:
  fs::path path_;
  std::string text_;
};

RadialDomain read_domain(const Reader& rd, const json& d) {
  rd.check_keys(d, {"shape", "a", "b", "radius", "dim"}, "domain");
  if (!d.contains("shape")) rd.fail("domain", "domain needs a 'shape' (interval or ball)");
  const std::string shape = rd.string(d, "shape");
  try {
    if (shape == "interval") {
      if (d.contains("radius") || d.contains("dim")) rd.fail("domain", "interval domains take 'a' and 'b'");
      if (!d.contains("a") || !d.contains("b")) rd.fail("domain", "interval domain needs 'a' and 'b'");
      return RadialDomain::interval(rd.number(d, "a"), rd.number(d, "b"));
    }
    if (shape == "ball") {
      if (d.contains("a") || d.contains("b")) rd.fail("domain", "ball domains take 'radius' and 'dim'");
      if (!d.contains("radius") || !d.contains("dim")) rd.fail("domain", "ball domain needs 'radius' and 'dim'");
      return RadialDomain::ball(rd.number(d, "radius"), static_cast<int>(rd.integer(d, "dim")));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const ValidationError& e) {
    rd.fail("domain", e.what());
  }
  rd.fail("shape", "unknown domain shape '" + shape + "'");
}

ScalarFunction read_weight(const Reader& rd, const json& f) {
  if (f.is_number()) return ScalarFunction::constant(f.get<double>());
  rd.check_keys(f, {"constant", "csv"}, "f");
  if (f.contains("constant") == f.contains("csv")) rd.fail("f", "'f' takes exactly one of 'constant' or 'csv'");
  if (f.contains("constant")) return ScalarFunction::constant(rd.number(f, "constant"));
  fs::path csv = rd.string(f, "csv");
  if (csv.is_relative()) csv = rd.path().parent_path() / csv;
  if (!fs::exists(csv)) rd.fail("csv", "tabulated f: file not found: " + csv.string());
  try {
    return ScalarFunction::from_csv(csv);
  } catch (const ValidationError& e) {
    rd.fail("csv", e.what());
  }
}

PairConfig read_pair(const Reader& rd, const json& j) {
  PairConfig pc;
  if (j.is_string()) {
    pc.id = j.get<std::string>();
  } else {
    rd.check_keys(j, {"id", "q", "b"}, "pair");
    if (!j.contains("id")) rd.fail("pair", "pair needs an 'id'");
    pc.id = rd.string(j, "id");
    pc.params.q = rd.maybe_number(j, "q");
    pc.params.b = rd.maybe_number(j, "b");
  }
  const auto ids = catalog_ids();
  if (std::find(ids.begin(), ids.end(), pc.id) == ids.end()) rd.fail("pair", "unknown catalog pair '" + pc.id + "'");
  return pc;
}

std::vector<int> read_sizes(const Reader& rd, const json& j) {
  if (!j.is_array()) rd.fail("refine", "'refine' must be an array of grid sizes");
  std::vector<int> out;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 3) rd.fail("refine", "'refine' entries must be integers >= 3");
    if (!out.empty() && v.get<int>() <= out.back()) rd.fail("refine", "'refine' must be strictly increasing");
    out.push_back(v.get<int>());
  }
  return out;
}

NonlinearityPair build_pair(const PairConfig& pc, double p) {
  CatalogParams params = pc.params;
  if (pc.id == "linear-g" || pc.id == "remark-log") params.p = p;
  return catalog_pair(pc.id, params);
}

fs::path output_dir(const ExperimentConfig& config, const RunOptions& options) {
  if (options.out) return *options.out;
  if (config.output) return *config.output;
  if (const char* env = std::getenv("QUASILIN_OUT"); env && *env) return env;
  return "out";
}

void require(const ExperimentConfig& c, bool ok, const std::string& key, const std::string& command) {
  if (!ok)
    throw ConfigError(c.source.string() + ": missing mandatory key '" + key + "' for subcommand " + command);
}

ordered_json row_json(const BranchRow& r) {
  return {{"lambda", r.lambda},
          {"status", to_string(r.status)},
          {"sup_norm", r.sup_norm},
          {"w1p_seminorm", r.w1p_seminorm},
          {"iterations", r.iterations}};
}

}  // namespace

ExperimentConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw ConfigError(path.string() + ":" + std::to_string(line) + ": JSON parse error: " + e.what());
  }
  const Reader rd(path, text);
  if (!root.is_object()) rd.fail("", "top level must be a JSON object");
  rd.check_keys(root,
                {"command", "description", "p", "domain", "n", "refine", "f", "pair", "lambda", "lambda_factor",
                 "dirac_mass", "epsilon", "tolerances", "output", "seed", "perturbation_checks", "branch",
                 "mountain_pass", "rows", "pairs", "samples"},
                "config");

  ExperimentConfig c;
  c.source = path;
  if (root.contains("command")) c.command = rd.string(root, "command");
  if (root.contains("description")) c.description = rd.string(root, "description");
  if (root.contains("p")) c.p = rd.number(root, "p");
  if (root.contains("domain")) c.domain = read_domain(rd, root["domain"]);
  if (root.contains("n")) {
    const auto n = rd.integer(root, "n");
    if (n < 3) rd.fail("n", "'n' must be >= 3");
    c.n = static_cast<int>(n);
  }
  if (root.contains("refine")) c.refine = read_sizes(rd, root["refine"]);
  if (root.contains("f")) c.f = read_weight(rd, root["f"]);
  if (root.contains("pair")) c.pair = read_pair(rd, root["pair"]);
  if (root.contains("lambda")) c.lambda = rd.number(root, "lambda");
  if (root.contains("lambda_factor")) c.lambda_factor = rd.number(root, "lambda_factor");
  if (c.lambda && c.lambda_factor) rd.fail("lambda_factor", "give either 'lambda' or 'lambda_factor', not both");
  if (root.contains("dirac_mass")) c.dirac_mass = rd.number(root, "dirac_mass");
  if (root.contains("epsilon")) c.tol.epsilon = rd.number(root, "epsilon");
  if (root.contains("tolerances")) {
    const json& t = root["tolerances"];
    rd.check_keys(t, {"fixed_point", "newton", "blowup", "max_iterations", "max_newton", "max_halvings",
                      "singular_exclude"},
                  "tolerances");
    if (t.contains("fixed_point")) c.tol.fixed_point = rd.number(t, "fixed_point");
    if (t.contains("newton")) c.tol.newton = rd.number(t, "newton");
    if (t.contains("blowup")) c.tol.blowup = rd.number(t, "blowup");
    if (t.contains("max_iterations")) c.tol.max_iterations = static_cast<int>(rd.integer(t, "max_iterations"));
    if (t.contains("max_newton")) c.tol.max_newton = static_cast<int>(rd.integer(t, "max_newton"));
    if (t.contains("max_halvings")) c.tol.max_halvings = static_cast<int>(rd.integer(t, "max_halvings"));
    if (t.contains("singular_exclude")) c.tol.singular_exclude = static_cast<int>(rd.integer(t, "singular_exclude"));
  }
  if (root.contains("output")) c.output = rd.string(root, "output");
  if (root.contains("seed")) {
    const auto s = rd.integer(root, "seed");
    if (s < 0) rd.fail("seed", "'seed' must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (root.contains("perturbation_checks"))
    c.perturbation_checks = static_cast<int>(rd.integer(root, "perturbation_checks"));
  if (root.contains("branch")) {
    const json& b = root["branch"];
    rd.check_keys(b, {"lambda_start", "rel_width", "levels", "r", "max_doublings"}, "branch");
    if (b.contains("lambda_start")) c.branch.lambda_start = rd.number(b, "lambda_start");
    if (b.contains("rel_width")) c.branch.rel_width = rd.number(b, "rel_width");
    if (b.contains("max_doublings")) c.branch.max_doublings = static_cast<int>(rd.integer(b, "max_doublings"));
    if (b.contains("levels")) c.levels = static_cast<int>(rd.integer(b, "levels"));
    if (b.contains("r")) c.r = rd.number(b, "r");
  }
  if (root.contains("mountain_pass")) {
    const json& m = root["mountain_pass"];
    rd.check_keys(m, {"path_nodes", "step", "max_iterations", "gradient_tol", "lambda_star"}, "mountain_pass");
    auto& o = c.mountain_pass;
    if (m.contains("path_nodes")) o.path_nodes = static_cast<int>(rd.integer(m, "path_nodes"));
    if (m.contains("step")) o.step = rd.number(m, "step");
    if (m.contains("max_iterations")) o.max_iterations = static_cast<int>(rd.integer(m, "max_iterations"));
    if (m.contains("gradient_tol")) o.gradient_tol = rd.number(m, "gradient_tol");
    if (m.contains("lambda_star")) o.lambda_star = rd.number(m, "lambda_star");
  }
  if (root.contains("rows")) {
    if (!root["rows"].is_array()) rd.fail("rows", "'rows' must be an array");
    for (const json& r : root["rows"]) {
      rd.check_keys(r, {"m", "p", "N", "r", "q", "Q"}, "rows");
      if (!r.contains("p") || !r.contains("N")) rd.fail("rows", "every row needs 'p' and 'N'");
      ExponentRow row;
      row.m = r.contains("m") ? rd.number(r, "m") : 0.0;
      row.p = rd.number(r, "p");
      row.N = static_cast<int>(rd.integer(r, "N"));
      row.r = rd.maybe_number(r, "r");
      row.q = rd.maybe_number(r, "q");
      row.Q = rd.maybe_number(r, "Q");
      c.rows.push_back(row);
    }
  }
  if (root.contains("pairs")) {
    if (!root["pairs"].is_array()) rd.fail("pairs", "'pairs' must be an array");
    for (const json& pj : root["pairs"]) c.pairs.push_back(read_pair(rd, pj));
  }
  if (root.contains("samples")) c.samples = static_cast<int>(rd.integer(root, "samples"));
  return c;
}

ProblemSpec make_spec(const ExperimentConfig& c, int n) {
  ProblemSpec spec;
  spec.p = *c.p;
  spec.domain = *c.domain;
  spec.n = n;
  spec.f = c.f;
  spec.pair = build_pair(c.pair ? *c.pair : PairConfig{"linear-g", {}}, spec.p);
  spec.lambda = c.lambda.value_or(0.0);
  spec.dirac_mass = c.dirac_mass;
  spec.tol = c.tol;
  return spec;
}

std::vector<std::string> subcommands() { return {"transform", "solve", "eigen", "branch", "mpass", "exponents"}; }

std::vector<fs::path> write_report(const SolveOutcome& outcome, const fs::path& dir, const std::string& stem) {
  std::vector<fs::path> files;
  std::string field_path;
  if (outcome.field) {
    const fs::path csv = dir / (stem + "field.csv");
    write_field_csv(*outcome.field, csv);
    files.push_back(csv);
    field_path = csv.filename().string();
  }
  ordered_json j = to_json(outcome, field_path);
  if (outcome.companion) {
    const fs::path csv = dir / (stem + "companion.csv");
    write_field_csv(*outcome.companion, csv);
    files.push_back(csv);
    j["companion"] = csv.filename().string();
  }
  const fs::path summary = dir / (stem + "summary.json");
  write_text(summary, dump_json(j));
  files.insert(files.begin(), summary);
  return files;
}

std::vector<fs::path> write_report(const BranchTrace& trace, const fs::path& dir) {
  const fs::path csv = dir / "trace.csv";
  write_text(csv, trace_csv(trace));
  return {csv};
}

std::vector<fs::path> write_report(const std::vector<RegularityReport>& reports, const fs::path& dir) {
  ordered_json rows = ordered_json::array();
  std::string table = "m,p,N,r,q,Q,m_bar,k,tau,p_star,value_case,gradient_case,maja,majet,limi_w1p,limi_iii\n";
  const auto num = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  const auto flag = [](const std::optional<bool>& v) { return v ? std::string(*v ? "true" : "false") : std::string(); };
  for (const auto& r : reports) {
    rows.push_back(to_json(r));
    table += format_number(r.m) + "," + format_number(r.p) + "," + std::to_string(r.N) + "," + num(r.r) + "," +
             num(r.q) + "," + num(r.Q) + "," + format_number(r.m_bar) + "," + num(r.k) + "," + num(r.tau) + "," +
             format_number(r.p_star) + "," + r.value_case + "," + r.gradient_case + "," + flag(r.maja) + "," +
             flag(r.majet) + "," + flag(r.limi_w1p) + "," + flag(r.limi_iii) + "\n";
  }
  const fs::path summary = dir / "summary.json";
  const fs::path csv = dir / "table.csv";
  write_text(summary, dump_json(ordered_json{{"command", "exponents"}, {"rows", rows}}));
  write_text(csv, table);
  return {summary, csv};
}

namespace {

int run_transform(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  std::vector<NonlinearityPair> pairs;
  if (c.pairs.empty()) {
    pairs = builtin_catalog();
  } else {
    for (const auto& pc : c.pairs) pairs.push_back(build_pair(pc, c.p.value_or(2.0)));
  }
  ordered_json out = ordered_json::array();
  for (const auto& pair : pairs) {
    const EndpointFlags& flags = pair.flags();
    const double L = flags.L ? flags.L->value() : pair.u_endpoint().value();
    // Pulled back while Psi overflows or leaves 1e12.
    double top = 0.99 * std::min(L, 10.0);
    for (;;) {
      try {
        if (pair.psi(top) < 1e12) break;
      } catch (const DomainError&) {
      }
      top *= 0.95;
    }
    double round_trip = 0.0, relation = 0.0;
    for (int k = 0; k < c.samples; ++k) {
      const double t = top * k / std::max(c.samples - 1, 1);
      round_trip = std::max(round_trip, std::abs(pair.h(pair.psi(t)) - t));
      const double lhs = pair.beta()(t);
      const double rhs = (pair.p() - 1.0) * pair.g_prime(pair.psi(t));
      relation = std::max(relation, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    ordered_json j;
    j["id"] = pair.id();
    j["p"] = pair.p();
    j["flags"] = to_json(flags);
    j["mass_rule_c1"] = to_json(singular_mass_transfer(pair, 1.0));
    j["round_trip_max_error"] = round_trip;
    j["relation_max_relative_error"] = relation;
    out.push_back(j);
    log << pair.id() << ": round trip " << format_number(round_trip) << ", beta relation "
        << format_number(relation) << "\n";
  }
  write_text(dir / "summary.json", dump_json(ordered_json{{"command", "transform"}, {"pairs", out}}));
  return 0;
}

double resolve_lambda(const ExperimentConfig& c, const ProblemSpec& spec) {
  if (!c.lambda_factor) return spec.lambda;
  const double l1 = first_eigenvalue(spec.f, spec.p, spec.domain, spec.n, spec.tol.epsilon).lambda1;
  return *c.lambda_factor * l1;
}

int run_solve(const ExperimentConfig& c, const std::vector<int>& sizes, const fs::path& dir, std::ostream& log) {
  ordered_json runs = ordered_json::array();
  for (int n : sizes) {
    ProblemSpec spec = make_spec(c, n);
    spec.lambda = resolve_lambda(c, spec);
    SolveOutcome o = spec.dirac_mass > 0.0 ? dirac_solve(spec) : minimal_solution(spec);
    if (o.converged() && !o.companion) o.companion = transform_solution(*o.field, spec.pair, TransformDirection::v_to_u);
    if (o.converged()) {
      const ResidualReport ur = residual(*o.companion, spec, Equation::u_equation);
      o.metrics.emplace_back("u_residual_sup", ur.sup);
      if (!o.metric("w1p_seminorm_u"))
        o.metrics.emplace_back("w1p_seminorm_u", compute_norms(*o.companion, spec.p, {}, spec.f).w1p_seminorm);
    }
    const std::string stem = sizes.size() > 1 ? "n" + std::to_string(n) + "_" : "";
    write_report(o, dir, stem);
    ordered_json run = to_json(o, o.field ? stem + "field.csv" : "");
    run["n"] = n;
    run["lambda"] = spec.lambda;
    if (o.companion) run["companion"] = stem + "companion.csv";
    runs.push_back(run);
    log << "n=" << n << " lambda=" << format_number(spec.lambda) << " status=" << to_string(o.status)
        << " sup=" << format_number(o.norms.sup) << "\n";
  }
  write_text(dir / "summary.json", dump_json(ordered_json{{"command", "solve"}, {"runs", runs}}));
  return 0;
}

int run_eigen(const ExperimentConfig& c, int n, const fs::path& dir, std::ostream& log) {
  const ProblemSpec spec = make_spec(c, n);
  const EigenResult e = first_eigenvalue(spec.f, spec.p, spec.domain, n, spec.tol.epsilon);
  write_field_csv(*e.eigenfield, dir / "eigenfield.csv");
  ordered_json j;
  j["command"] = "eigen";
  j["n"] = n;
  j["lambda1"] = e.lambda1;
  j["iterations"] = e.iterations;
  j["quotient_history"] = e.quotient_history;
  j["eigenfield"] = "eigenfield.csv";
  if (c.perturbation_checks > 0) {
    const RadialGrid& G = e.eigenfield->grid();
    const Vector fw = sample_weight(G, spec.f);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int increased = 0;
    for (int k = 0; k < c.perturbation_checks; ++k) {
      Vector w = e.eigenfield->values();
      for (int i = 0; i < w.size(); ++i)
        if (!G.is_dirichlet(i)) w[i] += 1e-3 * e.eigenfield->sup_norm() * unit(rng);
      if (rayleigh_quotient(G, w, fw, spec.p) >= e.lambda1) ++increased;
    }
    j["perturbation"] = {{"checks", c.perturbation_checks}, {"quotient_increased", increased}};
  }
  write_text(dir / "summary.json", dump_json(j));
  log << "lambda1=" << format_number(e.lambda1) << " iterations=" << e.iterations << "\n";
  return 0;
}

int run_branch(const ExperimentConfig& c, int n, const fs::path& dir, std::ostream& log) {
  const ProblemSpec spec = make_spec(c, n);
  const BranchTrace trace = critical_lambda(spec, c.branch);
  write_report(trace, dir);
  ordered_json j;
  j["command"] = "branch";
  j["n"] = n;
  j["lambda_star"] = trace.lambda_star();
  j["lambda_lo"] = trace.lambda_lo;
  j["lambda_hi"] = trace.lambda_hi;
  j["relative_width"] = trace.relative_width();
  j["probes"] = trace.rows.size();
  j["trace"] = "trace.csv";
  if (trace.relative_width() <= 1e-3) {
    const ExtremalReport ex = extremal_branch(spec, trace, c.levels, c.r);
    write_field_csv(ex.v_star, dir / "extremal.csv");
    ordered_json e;
    e["field"] = "extremal.csv";
    e["sup_extrapolated"] = ex.sup_extrapolated;
    e["seminorm_extrapolated"] = ex.seminorm_extrapolated;
    e["seminorm_bounded_observed"] = ex.seminorm_bounded_observed;
    e["sobolev_bypassed"] = ex.sobolev_bypassed;
    e["bounded_expected"] = ex.bounded_expected;
    e["w1p_expected"] = ex.w1p_expected;
    e["predicates"] = ex.predicates ? to_json(*ex.predicates) : ordered_json(nullptr);
    ordered_json rows = ordered_json::array();
    for (const auto& r : ex.approach) rows.push_back(row_json(r));
    e["approach"] = rows;
    j["extremal"] = e;
  }
  write_text(dir / "summary.json", dump_json(j));
  log << "lambda*=" << format_number(trace.lambda_star()) << " bracket=[" << format_number(trace.lambda_lo) << ", "
      << format_number(trace.lambda_hi) << "]\n";
  return 0;
}

int run_mpass(const ExperimentConfig& c, int n, const fs::path& dir, std::ostream& log) {
  const ProblemSpec spec = make_spec(c, n);
  const SolveOutcome low = minimal_solution(spec);
  write_report(low, dir, "low_");
  if (!low.converged()) {
    log << "no minimal solution at lambda=" << format_number(spec.lambda) << " (" << to_string(low.status) << ")\n";
    write_text(dir / "summary.json",
               dump_json(ordered_json{{"command", "mpass"}, {"status", "error"}, {"message", "no minimal solution"}}));
    return 2;
  }
  const SolveOutcome second = mountain_pass_solve(spec, *low.field, c.mountain_pass);
  write_report(second, dir, "second_");
  ordered_json j;
  j["command"] = "mpass";
  j["status"] = to_string(second.status);
  j["experimental"] = second.experimental;
  if (!second.message.empty()) j["message"] = second.message;
  j["sup_minimal"] = low.norms.sup;
  j["energy_minimal"] = energy_functional(*low.field, spec);
  if (second.converged()) {
    j["sup_second"] = second.norms.sup;
    j["energy_second"] = energy_functional(*second.field, spec);
  }
  j["minimal"] = "low_summary.json";
  j["second"] = "second_summary.json";
  write_text(dir / "summary.json", dump_json(j));
  log << "mpass status=" << to_string(second.status) << " sup_minimal=" << format_number(low.norms.sup)
      << " sup_second=" << format_number(second.norms.sup) << "\n";
  return second.converged() ? 0 : 3;
}

int run_exponents(const ExperimentConfig& c, const fs::path& dir, std::ostream& log) {
  std::vector<RegularityReport> reports;
  for (const auto& row : c.rows) {
    RegularityReport rep = row.m > 0.0 ? regularity_exponents(row.m, row.p, row.N) : RegularityReport{};
    if (row.r || row.q || row.Q) {
      const RegularityReport pr = admissibility_predicates(
          row.p, row.N, row.r.value_or(std::numeric_limits<double>::infinity()), row.q, row.Q);
      const RegularityReport base = rep;
      rep = pr;
      rep.m = base.m;
      rep.k = base.k;
      rep.tau = base.tau;
      rep.value_case = base.value_case;
      rep.gradient_case = base.gradient_case;
    }
    reports.push_back(rep);
    log << "m=" << format_number(row.m) << " p=" << format_number(row.p) << " N=" << row.N << " value="
        << rep.value_case << " gradient=" << rep.gradient_case << "\n";
  }
  write_report(reports, dir);
  return 0;
}

}  // namespace

int run(const std::string& sub, const ExperimentConfig& c, const RunOptions& options, std::ostream& log) {
  if (c.command && *c.command != sub)
    throw ConfigError(c.source.string() + ": config is for subcommand '" + *c.command + "', not '" + sub + "'");
  const fs::path dir = output_dir(c, options);
  std::ostringstream sink;
  std::ostream& out = options.quiet ? sink : log;
  const int n = options.n.value_or(c.n);

  if (sub == "transform") return run_transform(c, dir, out);
  if (sub == "exponents") {
    require(c, !c.rows.empty(), "rows", sub);
    return run_exponents(c, dir, out);
  }
  require(c, c.p.has_value(), "p", sub);
  require(c, c.domain.has_value(), "domain", sub);
  if (sub == "eigen") return run_eigen(c, n, dir, out);
  require(c, c.pair.has_value(), "pair", sub);
  if (sub == "branch") return run_branch(c, n, dir, out);
  require(c, c.lambda || c.lambda_factor, "lambda", sub);
  if (sub == "solve") {
    const std::vector<int> sizes = options.n || c.refine.empty() ? std::vector<int>{n} : c.refine;
    return run_solve(c, sizes, dir, out);
  }
  if (sub == "mpass") {
    require(c, c.lambda.has_value(), "lambda", sub);
    return run_mpass(c, n, dir, out);
  }
  throw ConfigError("unknown subcommand '" + sub + "'");
}

namespace {

std::string usage() {
  std::string s = "usage: quasilin <subcommand> --config PATH [--out DIR] [--n INT] [--quiet]\nsubcommands:";
  for (const auto& c : subcommands()) s += " " + c;
  s += "\nThe output directory defaults to $QUASILIN_OUT, then ./out.\n";
  return s;
}

}  // namespace

int main_entry(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage();
    return 64;
  }
  const std::string sub = argv[1];
  if (sub == "-h" || sub == "--help") {
    std::cout << usage();
    return 0;
  }
  const auto subs = subcommands();
  if (std::find(subs.begin(), subs.end(), sub) == subs.end()) {
    std::cerr << "unknown subcommand '" << sub << "'\n" << usage();
    return 64;
  }

  CLI::App app{"quasilin " + sub};
  std::string config_path;
  std::string out_dir;
  int n = 0;
  bool quiet = false;
  app.add_option("--config", config_path, "experiment config (JSON)")->required();
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--n", n, "grid size override")->check(CLI::Range(3, 1 << 24));
  app.add_flag("--quiet", quiet, "suppress progress lines");
  try {
    app.parse(argc - 1, argv + 1);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 64;
  }

  RunOptions options;
  if (!out_dir.empty()) options.out = out_dir;
  if (n > 0) options.n = n;
  options.quiet = quiet;
  try {
    const ExperimentConfig config = load_config(config_path);
    return run(sub, config, options, std::cout);
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace quasilin::cli
