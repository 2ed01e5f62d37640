#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quasilin/analysis.hpp"
#include "quasilin/errors.hpp"
#include "quasilin/problem.hpp"

namespace quasilin::cli {

/// Malformed or inconsistent configuration; the message starts with
/// "path:line:" when a location is known.
class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct PairConfig {
  std::string id;
  CatalogParams params;
};

struct ExponentRow {
  double m = 0.0, p = 0.0;
  int N = 0;
  std::optional<double> r, q, Q;
};

struct ExperimentConfig {
  std::filesystem::path source;
  std::optional<std::string> command;
  std::string description;

  std::optional<double> p;
  std::optional<RadialDomain> domain;
  int n = 201;
  std::vector<int> refine;            ///< strictly increasing grid sizes
  ScalarFunction f = ScalarFunction::constant(1.0);
  std::optional<PairConfig> pair;
  std::optional<double> lambda;
  std::optional<double> lambda_factor;  ///< lambda = factor * lambda_1(f)
  double dirac_mass = 0.0;
  Tolerances tol;
  std::optional<std::filesystem::path> output;
  std::uint64_t seed = 0;

  int perturbation_checks = 0;       ///< eigen: random local-minimum probes
  BranchOptions branch;
  int levels = 8;
  double r = std::numeric_limits<double>::infinity();
  MountainPassOptions mountain_pass;
  std::vector<ExponentRow> rows;
  std::vector<PairConfig> pairs;
  int samples = 100;
};

/// Strict JSON schema: unknown keys, wrong types and missing mandatory
/// parameters are errors naming the key and its line.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Builds the spec for grid size n; lambda left at 0 when given as a
/// multiple of lambda_1.
ProblemSpec make_spec(const ExperimentConfig& config, int n);

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<int> n;
  bool quiet = false;
};

std::vector<std::string> subcommands();

/// Runs one subcommand and writes its reports; returns the process exit
/// status (0 ok, 2 precondition/validation, 3 solver failure).
int run(const std::string& subcommand, const ExperimentConfig& config, const RunOptions& options,
        std::ostream& log);

// Report writers. Every call overwrites.
std::vector<std::filesystem::path> write_report(const SolveOutcome& outcome, const std::filesystem::path& dir,
                                                const std::string& stem = "");
std::vector<std::filesystem::path> write_report(const BranchTrace& trace, const std::filesystem::path& dir);
std::vector<std::filesystem::path> write_report(const std::vector<RegularityReport>& reports,
                                                const std::filesystem::path& dir);

/// argv-level entry point; exit 64 with usage text for an unknown subcommand.
int main_entry(int argc, char** argv);

}  // namespace quasilin::cli
