#include "gpdtail/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gpdtail/error.hpp"

namespace gpdtail {
namespace {

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

bool is_mse_layout(TableLayout l) {
  return l == TableLayout::Table1 || l == TableLayout::Table3 || l == TableLayout::Table5;
}
bool is_re_layout(TableLayout l) {
  return l == TableLayout::Table2 || l == TableLayout::Table4 || l == TableLayout::Table6;
}
bool is_pot_layout(TableLayout l) { return l == TableLayout::Table7 || l == TableLayout::Table8; }

std::string prefix(EstimatorId id) {
  std::string p(to_string(id));
  std::replace(p.begin(), p.end(), '-', '_');
  return p;
}

std::string param_column(TableLayout l) {
  if (l == TableLayout::Table7) return "df";
  if (l == TableLayout::Table8) return "index";
  return "xi";
}

// Does `r` belong to cell (n, param) of `layout`?
bool matches(const ExperimentResult& r, TableLayout layout, std::size_t n, double param,
             std::size_t k) {
  const ExperimentSpec& s = r.spec;
  if (s.n != n) return false;
  switch (layout) {
    case TableLayout::Table1:
    case TableLayout::Table2:
    case TableLayout::Table3:
    case TableLayout::Table4: {
      const auto* g = std::get_if<GpdSource>(&s.source);
      const double sigma = (layout == TableLayout::Table1 || layout == TableLayout::Table2) ? 1.0 : 2.0;
      return g && !s.k && same(g->params.mu, 1.0) && same(g->params.sigma, sigma) &&
             same(g->params.xi, param);
    }
    case TableLayout::Table5:
    case TableLayout::Table6: {
      const auto* g = std::get_if<GpdParetoCase>(&s.source);
      return g && !s.k && same(g->mu, 1.0) && same(g->xi, param);
    }
    case TableLayout::Table7: {
      const auto* t = std::get_if<StudentTSource>(&s.source);
      return t && s.k && *s.k == k && same(t->df, param);
    }
    case TableLayout::Table8: {
      const auto* t = std::get_if<StableSource>(&s.source);
      return t && s.k && *s.k == k && same(t->index, param);
    }
  }
  return false;
}

const ReplicationSummary* find_summary(const ExperimentResult& r, EstimatorId id) {
  for (const auto& s : r.summaries) {
    if (s.estimator_id == id) return &s;
  }
  return nullptr;
}

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\r\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

TableLayout layout_from_number(int number) {
  if (number < 1 || number > 8) throw ParameterError("table number must be 1..8");
  return static_cast<TableLayout>(number);
}

std::string layout_name(TableLayout layout) {
  return "table" + std::to_string(static_cast<int>(layout));
}

TableGrid default_grid(TableLayout layout) {
  if (layout == TableLayout::Table7) return {{1000, 2500, 5000}, {1, 2, 3, 4, 5}, 100};
  if (layout == TableLayout::Table8) return {{1000, 2500, 5000}, {1.9, 1.7, 1.5, 1.3, 1.0}, 100};
  return {{50, 100, 250}, {0.1, 0.25, 0.5, 0.75, 1.0}, 0};
}

std::vector<EstimatorId> layout_estimators(TableLayout layout) {
  if (is_pot_layout(layout)) {
    return {EstimatorId::ZhangStephens, EstimatorId::GpdMLE, EstimatorId::Hill,
            EstimatorId::TransformedZS};
  }
  return {EstimatorId::ZhangStephens, EstimatorId::TransformedZS, EstimatorId::PWM,
          EstimatorId::TransformedPWM};
}

std::vector<ExperimentSpec> table_scenarios(TableLayout layout, const TableGrid& grid, std::size_t m,
                                            std::uint64_t seed) {
  std::vector<ExperimentSpec> out;
  for (std::size_t n : grid.n) {
    for (double p : grid.param) {
      ExperimentSpec s;
      s.n = n;
      s.m = m;
      s.seed = seed;
      s.estimators = layout_estimators(layout);
      switch (layout) {
        case TableLayout::Table1:
        case TableLayout::Table2:
          s.source = GpdSource{{1.0, 1.0, p}};
          break;
        case TableLayout::Table3:
        case TableLayout::Table4:
          s.source = GpdSource{{1.0, 2.0, p}};
          break;
        case TableLayout::Table5:
        case TableLayout::Table6:
          s.source = GpdParetoCase{1.0, p};
          break;
        case TableLayout::Table7:
          s.source = StudentTSource{p};
          s.k = grid.k;
          s.fold_absolute = true;
          break;
        case TableLayout::Table8:
          s.source = StableSource{p};
          s.k = grid.k;
          s.fold_absolute = true;
          break;
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::size_t TableDocument::column(std::string_view col) const {
  auto it = std::find(header.begin(), header.end(), col);
  if (it == header.end()) throw DataError("table has no column '" + std::string(col) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

TableDocument emit_table(const std::vector<ExperimentResult>& results, TableLayout layout) {
  return emit_table(results, layout, default_grid(layout));
}

TableDocument emit_table(const std::vector<ExperimentResult>& results, TableLayout layout,
                         const TableGrid& grid) {
  const auto ids = layout_estimators(layout);
  TableDocument doc;
  doc.name = layout_name(layout);
  doc.header.push_back("n");
  if (is_pot_layout(layout)) doc.header.push_back("k");
  doc.header.push_back(param_column(layout));
  for (EstimatorId id : ids) {
    const std::string p = prefix(id);
    if (is_mse_layout(layout)) {
      for (const char* f : {"_mse", "_bias", "_mc_se_mse", "_mc_se_bias", "_failures"}) {
        doc.header.push_back(p + f);
      }
    } else if (is_re_layout(layout)) {
      for (const char* f : {"_rel_eff", "_mc_se_rel_eff", "_failures"}) doc.header.push_back(p + f);
    } else {
      for (const char* f : {"_bias", "_mse", "_mc_se_bias", "_mc_se_mse", "_failures"}) {
        doc.header.push_back(p + f);
      }
    }
  }

  std::vector<std::string> missing;
  for (std::size_t n : grid.n) {
    for (double param : grid.param) {
      const ExperimentResult* hit = nullptr;
      for (const auto& r : results) {
        if (matches(r, layout, n, param, grid.k)) {
          hit = &r;
          break;
        }
      }
      std::vector<const ReplicationSummary*> cells;
      if (hit) {
        for (EstimatorId id : ids) cells.push_back(find_summary(*hit, id));
      }
      if (!hit || std::find(cells.begin(), cells.end(), nullptr) != cells.end()) {
        missing.push_back("(n=" + std::to_string(n) + ", " + param_column(layout) + "=" +
                          format_number(param) + ")");
        continue;
      }
      std::vector<std::string> row;
      row.push_back(std::to_string(n));
      if (is_pot_layout(layout)) row.push_back(std::to_string(grid.k));
      row.push_back(format_number(param));
      for (const ReplicationSummary* s : cells) {
        if (is_mse_layout(layout)) {
          for (double v : {s->mse, s->bias, s->mc_se_mse, s->mc_se_bias}) row.push_back(format_number(v));
        } else if (is_re_layout(layout)) {
          row.push_back(format_number(s->rel_eff));
          row.push_back(format_number(s->rel_eff * s->mc_se_mse / s->mse));
        } else {
          for (double v : {s->bias, s->mse, s->mc_se_bias, s->mc_se_mse}) row.push_back(format_number(v));
        }
        row.push_back(std::to_string(s->failures));
      }
      doc.rows.push_back(std::move(row));
    }
  }
  if (!missing.empty()) {
    std::string msg = doc.name + ": missing scenario cells:";
    for (const auto& m : missing) msg += " " + m;
    throw DataError(msg);
  }
  return doc;
}

TableDocument emit_long(const std::vector<ExperimentResult>& results) {
  TableDocument doc;
  doc.name = "summary";
  doc.header = {"source", "mu",       "sigma",      "param",      "true_xi",       "n",
                "k",      "m",        "seed",       "rounds",     "fold",          "estimator",
                "used",   "failures", "mse",        "bias",       "variance",      "rel_eff",
                "mc_se_mse", "mc_se_bias", "mean_estimate", "mean_clamp"};
  for (const auto& r : results) {
    const ExperimentSpec& s = r.spec;
    std::string mu, sigma, param;
    if (const auto* g = std::get_if<GpdSource>(&s.source)) {
      mu = format_number(g->params.mu);
      sigma = format_number(g->params.sigma);
      param = format_number(g->params.xi);
    } else if (const auto* c = std::get_if<GpdParetoCase>(&s.source)) {
      const GpdParams p = gpd_params(*c);
      mu = format_number(p.mu);
      sigma = format_number(p.sigma);
      param = format_number(p.xi);
    } else if (const auto* t = std::get_if<StudentTSource>(&s.source)) {
      param = format_number(t->df);
    } else if (const auto* st = std::get_if<StableSource>(&s.source)) {
      param = format_number(st->index);
    }
    for (const auto& sm : r.summaries) {
      doc.rows.push_back({source_name(s.source), mu, sigma, param,
                          format_number(true_shape(s.source)), std::to_string(s.n),
                          s.k ? std::to_string(*s.k) : "", std::to_string(s.m), std::to_string(s.seed),
                          std::to_string(s.rounds), s.fold_absolute ? "1" : "0",
                          std::string(to_string(sm.estimator_id)), std::to_string(sm.used),
                          std::to_string(sm.failures), format_number(sm.mse), format_number(sm.bias),
                          format_number(sm.variance), format_number(sm.rel_eff),
                          format_number(sm.mc_se_mse), format_number(sm.mc_se_bias),
                          format_number(sm.mean_estimate), format_number(sm.mean_clamp)});
    }
  }
  return doc;
}

std::string to_csv(const TableDocument& doc) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += "\r\n";
  };
  line(doc.header);
  for (const auto& row : doc.rows) line(row);
  return out;
}

std::string to_json(const TableDocument& doc) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : doc.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < doc.header.size(); ++i) {
      const std::string& cell = row[i];
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      const bool numeric = !cell.empty() && res.ec == std::errc() && res.ptr == cell.data() + cell.size();
      if (numeric) {
        obj[doc.header[i]] = v;
      } else if (cell == "nan" || cell == "inf" || cell == "-inf") {
        obj[doc.header[i]] = nullptr;
      } else {
        obj[doc.header[i]] = cell;
      }
    }
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json out;
  out["table"] = doc.name;
  out["columns"] = doc.header;
  out["rows"] = std::move(rows);
  return out.dump(2) + "\n";
}

TableDocument parse_csv(std::string_view text, std::string name) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      field_started = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      field_started = false;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (quoted) throw DataError("csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw DataError("csv: no header");
  TableDocument doc;
  doc.name = std::move(name);
  doc.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != doc.header.size()) {
      throw DataError("csv: record " + std::to_string(r + 1) + " has " +
                      std::to_string(records[r].size()) + " fields, expected " +
                      std::to_string(doc.header.size()));
    }
    doc.rows.push_back(std::move(records[r]));
  }
  return doc;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw DataError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace gpdtail
