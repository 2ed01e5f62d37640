#include "quasilin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "quasilin/errors.hpp"

namespace quasilin {

using nlohmann::ordered_json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string field_csv(const GridField& field) {
  std::string out = "r,value\n";
  for (int i = 0; i < field.size(); ++i)
    out += format_number(field.grid().node(i)) + "," + format_number(field[i]) + "\n";
  return out;
}

void write_field_csv(const GridField& field, const std::filesystem::path& path) {
  write_text(path, field_csv(field));
}

GridField read_field_csv(const std::filesystem::path& path, GridPtr grid, FieldKind kind) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open field CSV " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("r,value", 0) != 0) throw ValidationError(path.string() + ": expected header 'r,value'");
  Vector values(grid->size());
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (i >= grid->size()) throw ValidationError(path.string() + ": more rows than grid nodes");
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ValidationError(path.string() + ": line " + std::to_string(i + 2));
    values[i++] = std::stod(line.substr(comma + 1));
  }
  if (i != grid->size()) throw ValidationError(path.string() + ": fewer rows than grid nodes");
  return GridField(std::move(grid), std::move(values), kind);
}

std::string trace_csv(const BranchTrace& trace) {
  std::string out = "lambda,status,sup_norm,w1p_seminorm,iterations\n";
  for (const BranchRow& r : trace.rows)
    out += format_number(r.lambda) + "," + to_string(r.status) + "," + format_number(r.sup_norm) + "," +
           format_number(r.w1p_seminorm) + "," + std::to_string(r.iterations) + "\n";
  return out;
}

namespace {

void dump(const ordered_json& j, std::ostringstream& out, int indent) {
  const std::string pad(indent + 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << ordered_json(it.key()).dump() << ": ";
        dump(it.value(), out, indent + 2);
      }
      out << "\n" << std::string(indent, ' ') << "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        dump(j[i], out, indent + 2);
      }
      out << "\n" << std::string(indent, ' ') << "]";
      return;
    }
    case ordered_json::value_t::number_float: {
      const double x = j.get<double>();
      out << (std::isfinite(x) ? format_number(x) : "\"" + format_number(x) + "\"");
      return;
    }
    default:
      out << j.dump();
  }
}

}  // namespace

std::string dump_json(const ordered_json& j) {
  std::ostringstream out;
  dump(j, out, 0);
  out << "\n";
  return out.str();
}

ordered_json to_json(const NormReport& norms) {
  ordered_json j;
  j["sup"] = norms.sup;
  ordered_json lk = ordered_json::array();
  for (const auto& [k, v] : norms.lk) lk.push_back({{"k", k}, {"norm", v}});
  j["lk"] = lk;
  j["w1p_seminorm"] = norms.w1p_seminorm;
  j["weighted_p"] = norms.weighted_p;
  return j;
}

ordered_json to_json(const ResidualReport& r) {
  return {{"sup", r.sup}, {"l1", r.l1}, {"excluded", r.excluded}, {"excluded_sup", r.excluded_sup}};
}

ordered_json to_json(const MassTransferRule& rule) {
  ordered_json j;
  j["case"] = to_string(rule.kind);
  j["mass"] = rule.mass;
  j["side"] = rule.side == MassSide::v_equation ? "v-equation" : "u-equation";
  if (rule.multiplier)
    j["multiplier"] = rule.multiplier->value();
  else
    j["multiplier"] = nullptr;
  return j;
}

ordered_json to_json(const SolveOutcome& o, const std::string& field_path) {
  ordered_json j;
  j["status"] = to_string(o.status);
  j["iterations"] = o.iterations;
  if (!o.message.empty()) j["message"] = o.message;
  j["experimental"] = o.experimental;
  j["norms"] = to_json(o.norms);
  j["residuals"] = to_json(o.residuals);
  j["field"] = field_path;
  if (o.mass_rule) j["mass_rule"] = to_json(*o.mass_rule);
  if (!o.metrics.empty()) {
    ordered_json m;
    for (const auto& [k, v] : o.metrics) m[k] = v;
    j["metrics"] = m;
  }
  return j;
}

namespace {

template <typename T>
ordered_json opt(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

ordered_json to_json(const RegularityReport& r) {
  ordered_json j;
  j["m"] = r.m;
  j["p"] = r.p;
  j["N"] = r.N;
  j["r"] = opt(r.r);
  j["q"] = opt(r.q);
  j["Q"] = opt(r.Q);
  j["m_bar"] = r.m_bar;
  j["k"] = opt(r.k);
  j["tau"] = opt(r.tau);
  j["p_star"] = r.p_star;
  j["p_conj"] = r.p_conj;
  j["r_conj"] = opt(r.r_conj);
  j["value_case"] = r.value_case;
  j["gradient_case"] = r.gradient_case;
  j["maja"] = opt(r.maja);
  j["majet"] = opt(r.majet);
  j["limi_w1p"] = opt(r.limi_w1p);
  j["limi_i"] = opt(r.limi_i);
  j["limi_ii"] = opt(r.limi_ii);
  j["limi_iii"] = opt(r.limi_iii);
  j["maja_bound"] = opt(r.maja_bound);
  j["majet_bound"] = opt(r.majet_bound);
  j["limi_w1p_bound"] = opt(r.limi_w1p_bound);
  j["limi_iii_bound"] = opt(r.limi_iii_bound);
  return j;
}

ordered_json to_json(const EndpointFlags& f) {
  const auto ext = [](const std::optional<ExtReal>& x) -> ordered_json {
    if (!x) return "unknown";
    if (x->is_infinite()) return "inf";
    return x->value();
  };
  return {{"L", ext(f.L)},
          {"Lambda", ext(f.Lambda)},
          {"beta_in_L1", to_string(f.beta_in_L1)},
          {"gamma_limit", ext(f.gamma_limit)}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace quasilin
