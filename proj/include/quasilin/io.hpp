#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "quasilin/analysis.hpp"
#include "quasilin/grid.hpp"
#include "quasilin/problem.hpp"

namespace quasilin {

/// 17 significant digits, the precision every writer uses.
std::string format_number(double x);

/// "r,value" header then one line per node.
std::string field_csv(const GridField& field);
void write_field_csv(const GridField& field, const std::filesystem::path& path);
GridField read_field_csv(const std::filesystem::path& path, GridPtr grid, FieldKind kind);

/// "lambda,status,sup_norm,w1p_seminorm,iterations" then one line per row.
std::string trace_csv(const BranchTrace& trace);

nlohmann::ordered_json to_json(const NormReport& norms);
nlohmann::ordered_json to_json(const ResidualReport& residuals);
/// status, iterations, norms, residuals and the CSV path of the field dump.
nlohmann::ordered_json to_json(const SolveOutcome& outcome, const std::string& field_path);
nlohmann::ordered_json to_json(const RegularityReport& report);
nlohmann::ordered_json to_json(const EndpointFlags& flags);
nlohmann::ordered_json to_json(const MassTransferRule& rule);

/// JSON text with every floating-point number printed to 17 significant
/// digits; non-finite numbers become the strings "inf", "-inf", "nan".
std::string dump_json(const nlohmann::ordered_json& j);

/// Writes text to path, creating parent directories; throws
/// std::runtime_error when the location is not writable.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace quasilin
