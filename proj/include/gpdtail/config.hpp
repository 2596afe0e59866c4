#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gpdtail/montecarlo.hpp"
#include "gpdtail/report.hpp"

namespace gpdtail {

// Error in a run configuration, pinned to a line and (when known) a key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string field, const std::string& message);

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

enum class OutputFormat { Csv, Json };
OutputFormat format_from_string(std::string_view text);

// Flat key = value text. Global keys come first; each "[scenario]" header
// opens a block. List-valued keys (n, xi, df, index) expand a block into the
// cartesian product of their values. A block with "table = N" starts from that
// table's grid and protocol.
//
//   output = results.csv        # global: output, format, threads, seed, layout
//   format = csv
//   [scenario]
//   source = gpd                # gpd | gpd-pareto | student-t | stable
//   mu = 1
//   sigma = 1
//   xi = 0.1, 0.25, 0.5
//   n = 50, 100
//   m = 1000
//   estimators = zs, transformed-zs, pwm, transformed-pwm
//
// Unknown keys, keys that do not apply to the chosen source, and duplicates
// are rejected.
struct RunConfig {
  std::vector<ExperimentSpec> experiments;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  std::optional<TableLayout> layout;  // render as a reference table instead of long form
};

RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::filesystem::path& path);

// One value per line; '#' starts a comment; blank lines ignored. Throws
// DataError naming the offending line.
std::vector<double> parse_data_values(std::string_view text);
std::vector<double> load_data_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace gpdtail
