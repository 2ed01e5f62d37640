#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "quasilin/errors.hpp"
#include "quasilin/io.hpp"

using namespace quasilin;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("quasilin_io_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(FormatNumber, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(INFINITY), "inf");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  EXPECT_EQ(format_number(NAN), "nan");
  for (double x : {M_PI, 1e-300, -7.25e11}) EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(FieldCsv, RoundTrip) {
  const auto grid = build_grid(RadialDomain::ball(2.0, 3), 17);
  const GridField u = sample(grid, [](double r) { return std::sin(r) * (2.0 - r) / 3.0; }, FieldKind::u_field);
  const fs::path dir = scratch("roundtrip");
  write_field_csv(u, dir / "sub" / "u.csv");
  const GridField back = read_field_csv(dir / "sub" / "u.csv", grid, FieldKind::u_field);
  EXPECT_EQ(back.values(), u.values());
  EXPECT_EQ(slurp(dir / "sub" / "u.csv").substr(0, 8), "r,value\n");

  const auto other = build_grid(RadialDomain::ball(2.0, 3), 9);
  EXPECT_THROW(read_field_csv(dir / "sub" / "u.csv", other, FieldKind::u_field), ValidationError);
  EXPECT_THROW(read_field_csv(dir / "missing.csv", grid, FieldKind::u_field), ValidationError);
}

TEST(TraceCsv, Rows) {
  BranchTrace t;
  for (int k = 0; k < 12; ++k)
    t.rows.push_back({0.01 * (1 << k), k < 9 ? SolveStatus::converged : SolveStatus::diverged, 0.1 * k, 0.2 * k, k});
  const std::string csv = trace_csv(t);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,status,sup_norm,w1p_seminorm,iterations");
  EXPECT_NE(csv.find("diverged"), std::string::npos);
  EXPECT_EQ(trace_csv(BranchTrace{}), "lambda,status,sup_norm,w1p_seminorm,iterations\n");
}

TEST(DumpJson, NonFiniteAndPrecision) {
  nlohmann::ordered_json j{{"a", 0.1}, {"b", INFINITY}, {"c", {1, 2}}, {"d", "x"}, {"e", nlohmann::ordered_json::object()}};
  const std::string s = dump_json(j);
  EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(s.find("\"inf\""), std::string::npos);
  const auto back = nlohmann::json::parse(s);
  EXPECT_EQ(back["a"].get<double>(), 0.1);
  EXPECT_EQ(back["b"], "inf");
  EXPECT_EQ(back["c"][1], 2);
  EXPECT_TRUE(back["e"].empty());
}

TEST(ToJson, Reports) {
  const auto r = regularity_exponents(1.1, 2.0, 3);
  const auto j = to_json(r);
  EXPECT_EQ(j["value_case"], "Lk");
  EXPECT_NEAR(j["k"].get<double>(), 4.125, 1e-12);
  const auto pair = catalog_pair("ex5");
  const auto flags = to_json(pair.flags());
  EXPECT_TRUE(flags.is_object());
  EXPECT_TRUE(to_json(singular_mass_transfer(pair, 1.0)).contains("case"));
}

TEST(WriteText, OverwritesAndFails) {
  const fs::path dir = scratch("write");
  write_text(dir / "a" / "b.txt", "first");
  write_text(dir / "a" / "b.txt", "2");
  EXPECT_EQ(slurp(dir / "a" / "b.txt"), "2");
  write_text(dir / "blocker", "");
  EXPECT_THROW(write_text(dir / "blocker" / "x.txt", "y"), std::runtime_error);
}
