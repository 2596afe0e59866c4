#include "gpdtail/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gpdtail/error.hpp"

namespace gpdtail {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto piece = trim(value.substr(start, comma == std::string_view::npos ? value.npos : comma - start));
    out.emplace_back(piece);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Block {
  std::size_t line = 0;
  std::map<std::string, Entry> entries;
};

double to_real(const std::string& key, const Entry& e, std::string_view text) {
  try {
    const double v = parse_number(text);
    if (!std::isfinite(v)) throw DataError("not finite");
    return v;
  } catch (const DataError&) {
    throw ConfigError(e.line, key, "'" + std::string(text) + "' is not a number");
  }
}

std::uint64_t to_count(const std::string& key, const Entry& e, std::string_view text) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(e.line, key, "'" + std::string(text) + "' is not a non-negative integer");
  }
  return v;
}

bool to_bool(const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes" || e.value == "on") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no" || e.value == "off") return false;
  throw ConfigError(e.line, key, "'" + e.value + "' is not a boolean");
}

std::vector<double> real_list(const std::string& key, const Entry& e) {
  std::vector<double> out;
  for (const auto& piece : split_list(e.value)) out.push_back(to_real(key, e, piece));
  return out;
}

std::vector<std::size_t> count_list(const std::string& key, const Entry& e) {
  std::vector<std::size_t> out;
  for (const auto& piece : split_list(e.value)) out.push_back(to_count(key, e, piece));
  return out;
}

const std::set<std::string>& allowed_keys(const std::string& source) {
  static const std::map<std::string, std::set<std::string>> kAllowed = {
      {"gpd", {"mu", "sigma", "xi"}},
      {"gpd-pareto", {"mu", "xi"}},
      {"student-t", {"df"}},
      {"stable", {"index"}},
  };
  return kAllowed.at(source);
}

std::vector<ExperimentSpec> expand_block(const Block& block, std::optional<std::uint64_t> global_seed) {
  static const std::set<std::string> kCommon = {"source", "n", "m", "k", "estimators", "seed",
                                                "rounds", "fold", "table"};
  const auto& entries = block.entries;
  auto get = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  std::optional<TableLayout> table;
  if (const Entry* e = get("table")) {
    const auto num = to_count("table", *e, e->value);
    if (num < 1 || num > 8) throw ConfigError(e->line, "table", "must be 1..8");
    table = layout_from_number(static_cast<int>(num));
  }

  std::string source;
  if (const Entry* e = get("source")) {
    source = e->value;
    if (source != "gpd" && source != "gpd-pareto" && source != "student-t" && source != "stable") {
      throw ConfigError(e->line, "source", "unknown source '" + source + "'");
    }
  } else if (table) {
    const int t = static_cast<int>(*table);
    source = t <= 4 ? "gpd" : t <= 6 ? "gpd-pareto" : t == 7 ? "student-t" : "stable";
  } else {
    throw ConfigError(block.line, "source", "scenario block needs 'source' or 'table'");
  }

  const auto& specific = allowed_keys(source);
  for (const auto& [key, e] : entries) {
    if (!kCommon.count(key) && !specific.count(key)) {
      throw ConfigError(e.line, key, "key does not apply to source '" + source + "'");
    }
  }

  std::vector<ExperimentSpec> base_specs;
  if (table) {
    // Start from the table grid, then let explicit keys narrow or override it.
    TableGrid grid = default_grid(*table);
    if (const Entry* e = get("n")) grid.n = count_list("n", *e);
    for (const char* key : {"xi", "df", "index"}) {
      if (const Entry* e = get(key)) grid.param = real_list(key, *e);
    }
    if (const Entry* e = get("k")) grid.k = to_count("k", *e, e->value);
    base_specs = table_scenarios(*table, grid);
    if (static_cast<int>(*table) <= 6) {
      for (const char* key : {"mu", "sigma"}) {
        if (const Entry* e = get(key)) throw ConfigError(e->line, key, "fixed by the table protocol");
      }
    }
  } else {
    auto require = [&](const std::string& key) -> const Entry& {
      const Entry* e = get(key);
      if (!e) throw ConfigError(block.line, key, "missing required key for source '" + source + "'");
      return *e;
    };
    const auto ns = count_list("n", require("n"));
    std::vector<double> params;
    double mu = 0.0;
    double sigma = 0.0;
    if (source == "gpd" || source == "gpd-pareto") {
      mu = to_real("mu", require("mu"), require("mu").value);
      if (source == "gpd") {
        sigma = to_real("sigma", require("sigma"), require("sigma").value);
        if (!(sigma > 0.0)) throw ConfigError(get("sigma")->line, "sigma", "must be > 0");
      } else if (!(mu > 0.0)) {
        throw ConfigError(get("mu")->line, "mu", "must be > 0 for the Pareto case");
      }
      params = real_list("xi", require("xi"));
      for (double xi : params) {
        if (!(xi > 0.0)) throw ConfigError(get("xi")->line, "xi", "must be > 0, got " + format_number(xi));
      }
    } else if (source == "student-t") {
      params = real_list("df", require("df"));
      for (double df : params) {
        if (!(df > 0.0)) throw ConfigError(get("df")->line, "df", "must be > 0");
      }
    } else {
      params = real_list("index", require("index"));
      for (double a : params) {
        if (!(a > 0.0 && a <= 2.0)) throw ConfigError(get("index")->line, "index", "must lie in (0, 2]");
      }
    }
    for (std::size_t n : ns) {
      for (double p : params) {
        ExperimentSpec s;
        s.n = n;
        if (source == "gpd") s.source = GpdSource{{mu, sigma, p}};
        if (source == "gpd-pareto") s.source = GpdParetoCase{mu, p};
        if (source == "student-t") s.source = StudentTSource{p};
        if (source == "stable") s.source = StableSource{p};
        if (const Entry* e = get("k")) s.k = to_count("k", *e, e->value);
        base_specs.push_back(std::move(s));
      }
    }
  }

  for (auto& s : base_specs) {
    if (global_seed) s.seed = *global_seed;
    if (const Entry* e = get("m")) s.m = to_count("m", *e, e->value);
    if (const Entry* e = get("seed")) s.seed = to_count("seed", *e, e->value);
    if (const Entry* e = get("rounds")) s.rounds = to_count("rounds", *e, e->value);
    if (const Entry* e = get("fold")) s.fold_absolute = to_bool("fold", *e);
    if (const Entry* e = get("estimators")) {
      s.estimators.clear();
      for (const auto& name : split_list(e->value)) {
        try {
          s.estimators.push_back(estimator_from_string(name));
        } catch (const ParameterError& err) {
          throw ConfigError(e->line, "estimators", err.what());
        }
      }
    }
    if (s.n < 2) throw ConfigError(get("n") ? get("n")->line : block.line, "n", "must be at least 2");
    if (s.m < 1) throw ConfigError(get("m")->line, "m", "must be at least 1");
    if (s.k && (*s.k < 1 || *s.k >= s.n)) {
      throw ConfigError(get("k") ? get("k")->line : block.line, "k", "must satisfy 1 <= k < n");
    }
    try {
      s.validate();
    } catch (const ParameterError& err) {
      throw ConfigError(block.line, "", err.what());
    }
  }
  return base_specs;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + (field.empty() ? "" : ", field '" + field + "'") +
                         ": " + message),
      line_(line),
      field_(std::move(field)) {}

OutputFormat format_from_string(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ParameterError("format must be csv or json, got '" + std::string(text) + "'");
}

RunConfig parse_run_config(std::string_view text) {
  static const std::set<std::string> kGlobal = {"output", "format", "threads", "seed", "layout"};
  RunConfig cfg;
  std::map<std::string, Entry> globals;
  std::vector<Block> blocks;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line != "[scenario]") throw ConfigError(line_no, "", "unknown section " + std::string(line));
      blocks.push_back(Block{line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(line_no, "", "empty key");
    if (value.empty()) throw ConfigError(line_no, key, "empty value");
    auto& target = blocks.empty() ? globals : blocks.back().entries;
    if (blocks.empty() && !kGlobal.count(key)) {
      throw ConfigError(line_no, key, "unknown global key (scenario keys belong in a [scenario] block)");
    }
    if (target.count(key)) throw ConfigError(line_no, key, "duplicate key");
    target.emplace(key, Entry{value, line_no});
  }

  for (const auto& [key, e] : globals) {
    if (key == "output") {
      cfg.output = e.value;
    } else if (key == "format") {
      try {
        cfg.format = format_from_string(e.value);
      } catch (const ParameterError& err) {
        throw ConfigError(e.line, key, err.what());
      }
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(to_count(key, e, e.value));
    } else if (key == "seed") {
      cfg.seed = to_count(key, e, e.value);
    } else if (key == "layout") {
      const auto num = to_count(key, e, e.value.starts_with("table") ? e.value.substr(5) : e.value);
      if (num < 1 || num > 8) throw ConfigError(e.line, key, "must be table1..table8");
      cfg.layout = layout_from_number(static_cast<int>(num));
    }
  }
  if (blocks.empty()) throw ConfigError(line_no, "", "no [scenario] block");
  for (const auto& b : blocks) {
    auto specs = expand_block(b, cfg.seed);
    cfg.experiments.insert(cfg.experiments.end(), specs.begin(), specs.end());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) { return parse_run_config(read_text_file(path)); }

std::vector<double> parse_data_values(std::string_view text) {
  std::vector<double> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    double v = 0.0;
    try {
      v = parse_number(line);
    } catch (const DataError&) {
      throw DataError("line " + std::to_string(line_no) + ": '" + std::string(line) + "' is not a number");
    }
    if (!std::isfinite(v)) throw DataError("line " + std::to_string(line_no) + ": value is not finite");
    out.push_back(v);
  }
  return out;
}

std::vector<double> load_data_file(const std::filesystem::path& path) {
  return parse_data_values(read_text_file(path));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gpdtail
