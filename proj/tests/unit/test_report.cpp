#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "gpdtail/error.hpp"
#include "gpdtail/report.hpp"

using namespace gpdtail;
using Catch::Approx;

namespace {
std::vector<ExperimentResult> run_all(const std::vector<ExperimentSpec>& specs) {
  std::vector<ExperimentResult> out;
  for (const auto& s : specs) out.push_back(run_experiment(s, 1));
  return out;
}
}  // namespace

TEST_CASE("format_number round-trips doubles", "[report][property]") {
  RngStream rng(501, 0);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.uniform() * 200) - 100);
    CHECK(parse_number(format_number(v)) == v);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::isnan(parse_number("nan")));
  CHECK_THROWS_AS(parse_number("0.1x"), DataError);
  CHECK_THROWS_AS(parse_number(""), DataError);
}

TEST_CASE("table layouts have the documented shape", "[report]") {
  TableGrid grid{{50}, {0.5, 1.0}, 0};
  const auto specs = table_scenarios(TableLayout::Table1, grid, 5, 9);
  REQUIRE(specs.size() == 2);
  const auto results = run_all(specs);

  const TableDocument t1 = emit_table(results, TableLayout::Table1, grid);
  CHECK(t1.name == "table1");
  CHECK(t1.header.size() == 2 + 4 * 5);
  CHECK(t1.header[2] == "zs_mse");
  CHECK(t1.rows.size() == 2);
  const auto& zs = results[0].summary(EstimatorId::ZhangStephens);
  CHECK(parse_number(t1.rows[0][t1.column("zs_mse")]) == zs.mse);
  CHECK(parse_number(t1.rows[0][t1.column("transformed_pwm_bias")]) ==
        results[0].summary(EstimatorId::TransformedPWM).bias);

  const TableDocument t2 = emit_table(results, TableLayout::Table2, grid);
  CHECK(t2.header.size() == 2 + 4 * 3);
  CHECK(parse_number(t2.rows[1][t2.column("zs_rel_eff")]) ==
        results[1].summary(EstimatorId::ZhangStephens).rel_eff);

  // Table 3 needs sigma = 2 scenarios, so none of these match.
  CHECK_THROWS_AS(emit_table(results, TableLayout::Table3, grid), DataError);
}

TEST_CASE("missing cells are named in the error", "[report]") {
  TableGrid grid{{50}, {0.5, 1.0}, 0};
  auto specs = table_scenarios(TableLayout::Table5, grid, 3, 9);
  specs.pop_back();
  const auto results = run_all(specs);
  try {
    (void)emit_table(results, TableLayout::Table5, grid);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("n=50, xi=1") != std::string::npos);
    CHECK(msg.find("xi=0.5") == std::string::npos);
  }
}

TEST_CASE("POT layouts carry k and the source parameter", "[report]") {
  TableGrid grid{{300}, {3.0}, 30};
  const auto specs = table_scenarios(TableLayout::Table7, grid, 4, 9);
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].fold_absolute);
  const TableDocument t7 = emit_table(run_all(specs), TableLayout::Table7, grid);
  CHECK(t7.header[0] == "n");
  CHECK(t7.header[1] == "k");
  CHECK(t7.header[2] == "df");
  CHECK(t7.header[3] == "zs_bias");
  CHECK(t7.rows[0][1] == "30");
  CHECK(t7.header.size() == 3 + 4 * 5);
}

TEST_CASE("CSV writer and reader round-trip", "[report]") {
  TableDocument doc;
  doc.name = "x";
  doc.header = {"a", "b,c", "d"};
  doc.rows = {{"1", "he said \"hi\"", ""}, {"line\nbreak", "2.5", "nan"}};
  const std::string csv = to_csv(doc);
  CHECK(csv.substr(0, 12) == "a,\"b,c\",d\r\n1");
  const TableDocument back = parse_csv(csv, "x");
  CHECK(back.header == doc.header);
  CHECK(back.rows == doc.rows);
  CHECK_THROWS_AS(parse_csv("a,b\r\n1\r\n"), DataError);
  CHECK_THROWS_AS(parse_csv("a,\"b\r\n"), DataError);
}

TEST_CASE("JSON output is typed", "[report]") {
  TableDocument doc;
  doc.name = "t";
  doc.header = {"n", "est", "v"};
  doc.rows = {{"50", "zs", "nan"}};
  const auto j = nlohmann::json::parse(to_json(doc));
  CHECK(j["table"] == "t");
  CHECK(j["rows"][0]["n"] == 50);
  CHECK(j["rows"][0]["est"] == "zs");
  CHECK(j["rows"][0]["v"].is_null());
}

TEST_CASE("long form has one row per scenario and estimator", "[report]") {
  TableGrid grid{{50}, {0.25}, 0};
  const auto results = run_all(table_scenarios(TableLayout::Table3, grid, 3, 9));
  const TableDocument doc = emit_long(results);
  CHECK(doc.rows.size() == 4);
  CHECK(doc.rows[0][doc.column("sigma")] == "2");
  CHECK(doc.rows[3][doc.column("estimator")] == "transformed-pwm");
  for (const auto& row : doc.rows) CHECK(row.size() == doc.header.size());
}

TEST_CASE("layout helpers", "[report]") {
  CHECK(layout_name(layout_from_number(4)) == "table4");
  CHECK_THROWS_AS(layout_from_number(9), ParameterError);
  CHECK(default_grid(TableLayout::Table8).param.back() == 1.0);
  CHECK(table_scenarios(TableLayout::Table6, default_grid(TableLayout::Table6)).size() == 15);
}
