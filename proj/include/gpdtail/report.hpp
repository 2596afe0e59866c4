#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gpdtail/montecarlo.hpp"

namespace gpdtail {

// Table layouts of the reference study.
//   Table1/2: GPD mu = 1, sigma = 1      (1: MSE and bias, 2: relative efficiency)
//   Table3/4: GPD mu = 1, sigma = 2
//   Table5/6: GPD mu = 1, sigma = xi mu  (exact Pareto)
//   Table7:   POT on Student's t, rows (n, df)
//   Table8:   POT on symmetric stable, rows (n, index)
enum class TableLayout { Table1 = 1, Table2, Table3, Table4, Table5, Table6, Table7, Table8 };

TableLayout layout_from_number(int number);
std::string layout_name(TableLayout layout);  // "table1" ... "table8"

struct TableGrid {
  std::vector<std::size_t> n;
  // xi for Tables 1-6, df for Table 7, stable index for Table 8.
  std::vector<double> param;
  std::size_t k = 100;  // Tables 7-8
};

TableGrid default_grid(TableLayout layout);
std::vector<EstimatorId> layout_estimators(TableLayout layout);

// One ExperimentSpec per grid cell, in row order. POT layouts fold |x|.
std::vector<ExperimentSpec> table_scenarios(TableLayout layout, const TableGrid& grid,
                                            std::size_t m = 1000, std::uint64_t seed = kDefaultSeed);

// Rectangular string table; every row has header.size() cells.
struct TableDocument {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws if absent
};

// Renders the layout for the default grid. Throws DataError naming every
// missing (n, parameter) cell.
TableDocument emit_table(const std::vector<ExperimentResult>& results, TableLayout layout);
TableDocument emit_table(const std::vector<ExperimentResult>& results, TableLayout layout,
                         const TableGrid& grid);

// One row per (scenario, estimator) with every summary field.
TableDocument emit_long(const std::vector<ExperimentResult>& results);

std::string to_csv(const TableDocument& doc);
std::string to_json(const TableDocument& doc);
TableDocument parse_csv(std::string_view text, std::string name = {});

// Shortest text that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double v);
double parse_number(std::string_view text);

}  // namespace gpdtail
