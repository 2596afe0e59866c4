// gpdtail: GPD shape estimation, Monte Carlo tables and quantiles.
//
// Exit codes: 0 success, 1 usage or validation error, 2 data error,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpdtail/config.hpp"
#include "gpdtail/error.hpp"
#include "gpdtail/estimators.hpp"
#include "gpdtail/montecarlo.hpp"
#include "gpdtail/pot.hpp"
#include "gpdtail/report.hpp"
#include "gpdtail/transform.hpp"

namespace {

using namespace gpdtail;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

// Raised when an estimator returns a fit it marks as unusable.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

std::string render(const TableDocument& doc, OutputFormat format) {
  return format == OutputFormat::Json ? to_json(doc) : to_csv(doc);
}

void print_fit(const FitResult& fit, const std::optional<TransformSpec>& spec) {
  std::cout << "method = " << to_string(fit.estimator_id) << "\n";
  std::cout << "xi_hat = " << format_number(fit.xi_hat) << "\n";
  if (fit.sigma_hat) std::cout << "sigma_hat = " << format_number(*fit.sigma_hat) << "\n";
  if (fit.mu_hat) std::cout << "mu_hat = " << format_number(*fit.mu_hat) << "\n";
  for (const auto& [key, value] : fit.diagnostics) {
    std::cout << key << " = " << format_number(value) << "\n";
  }
  if (spec && fit.xi_hat > 0.0) {
    std::cout << "transform_mu_hat = " << format_number(spec->mu_hat) << "\n";
    std::cout << "transform_sigma_hat = " << format_number(spec->sigma_hat) << "\n";
    std::cout << "transform_xi_hat = " << format_number(spec->xi_hat) << "\n";
    std::cout << "alpha_t = " << format_number(1.0 / fit.xi_hat) << "\n";
  }
}

struct EstimateOptions {
  std::string data;
  std::string method;
  std::optional<std::size_t> k;
  bool excess_input = false;
  bool fold = false;
  double offset = 0.35;
  std::size_t rounds = 0;
};

int run_estimate(const EstimateOptions& opt) {
  const EstimatorId id = estimator_from_string(opt.method);
  const Sample x(load_data_file(opt.data));
  if (x.size() < 2) throw DataError("insufficient data: " + std::to_string(x.size()) + " value(s), need at least 2");

  FitResult fit;
  std::optional<TransformSpec> spec;
  if (opt.k) {
    if (opt.excess_input) throw ParameterError("--excesses cannot be combined with --k");
    PotConfig cfg;
    cfg.k = *opt.k;
    cfg.estimators = {id};
    if (id == EstimatorId::TransformedZS) cfg.estimators.insert(cfg.estimators.begin(), EstimatorId::ZhangStephens);
    if (id == EstimatorId::TransformedPWM) cfg.estimators.insert(cfg.estimators.begin(), EstimatorId::PWM);
    cfg.fold_absolute = opt.fold;
    const PotResult res = pot_estimate(x, cfg);
    if (auto f = res.failures.find(id); f != res.failures.end()) throw SingularityError(f->second);
    fit = res.fits.at(id);
    std::cout << "threshold = " << format_number(res.threshold) << "\n";
    std::cout << "excess_count = " << res.excess_count << "\n";
    if (id == EstimatorId::TransformedZS || id == EstimatorId::TransformedPWM) {
      const FitResult& init = res.fits.at(cfg.estimators.front());
      spec = TransformSpec{res.threshold, *init.sigma_hat, init.xi_hat, TransformSpec::Form::ThreeParameter};
    }
  } else {
    if (opt.fold) throw ParameterError("--fold requires --k");
    if (id == EstimatorId::Hill) throw ParameterError("hill requires --k");
    const PlottingPosition pos{opt.offset};
    if (opt.excess_input) {
      switch (id) {
        case EstimatorId::ZhangStephens: fit = estimate_zhang_stephens(x); break;
        case EstimatorId::PWM: fit = estimate_pwm(x, pos); break;
        case EstimatorId::GpdMLE: fit = estimate_gpd_mle(x); break;
        case EstimatorId::ParetoML: fit = estimate_pareto_ml(x); break;
        default:
          throw ParameterError("--excesses supports zs, pwm, mle and pareto-ml");
      }
    } else if (id == EstimatorId::ParetoML) {
      fit = estimate_pareto_ml(x);
    } else {
      // Location estimated by the sample minimum; initial fits use the excesses over it.
      const double mu_hat = x.min();
      const Sample excess = excesses(x, mu_hat);
      switch (id) {
        case EstimatorId::ZhangStephens: fit = estimate_zhang_stephens(excess); break;
        case EstimatorId::PWM: fit = estimate_pwm(excess, pos); break;
        case EstimatorId::GpdMLE: fit = estimate_gpd_mle(excess); break;
        case EstimatorId::TransformedZS:
        case EstimatorId::TransformedPWM: {
          const FitResult init = id == EstimatorId::TransformedZS ? estimate_zhang_stephens(excess)
                                                                  : estimate_pwm(excess, pos);
          fit = iterate_transform(x, init, mu_hat, opt.rounds);
          spec = TransformSpec{mu_hat, *init.sigma_hat, init.xi_hat, TransformSpec::Form::ThreeParameter};
          break;
        }
        default:
          break;
      }
      if (id != EstimatorId::TransformedZS && id != EstimatorId::TransformedPWM) fit.mu_hat = mu_hat;
    }
  }
  print_fit(fit, spec);
  if (!fit.converged()) throw NumericalFailure("estimator did not converge (no finite maximizer)");
  return kExitOk;
}

struct QuantileOptions {
  std::optional<double> mu, sigma, xi;
  std::string fit;
  std::vector<double> probs;
};

std::map<std::string, double> read_fit_file(const std::string& path) {
  std::map<std::string, double> out;
  const std::string text = read_text_file(path);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
    pos = eol == std::string::npos ? text.size() : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto strip = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    try {
      out[key] = parse_number(value);
    } catch (const DataError&) {
      // non-numeric entries such as "method = zs" are informational
    }
  }
  return out;
}

int run_quantile(const QuantileOptions& opt) {
  const bool direct = opt.mu || opt.sigma || opt.xi;
  if (direct == !opt.fit.empty()) throw ParameterError("give either --mu/--sigma/--xi or --fit");
  if (opt.probs.empty()) throw ParameterError("--p needs at least one probability");
  if (direct) {
    if (!opt.mu || !opt.sigma || !opt.xi) throw ParameterError("--mu, --sigma and --xi are all required");
    const GpdParams p{*opt.mu, *opt.sigma, *opt.xi};
    p.validate();
    for (double prob : opt.probs) {
      std::cout << format_number(prob) << "," << format_number(gpd_quantile(p, prob)) << "\n";
    }
    return kExitOk;
  }
  const auto fit = read_fit_file(opt.fit);
  auto need = [&](const char* key) {
    auto it = fit.find(key);
    if (it == fit.end()) throw DataError(opt.fit + ": missing '" + key + "'");
    return it->second;
  };
  const TransformSpec spec{need("transform_mu_hat"), need("transform_sigma_hat"), need("transform_xi_hat"),
                           TransformSpec::Form::ThreeParameter};
  const double alpha = need("alpha_t");
  for (double prob : opt.probs) {
    std::cout << format_number(prob) << "," << format_number(gpd_quantile_via_transform(spec, alpha, prob))
              << "\n";
  }
  return kExitOk;
}

struct SimulateOptions {
  std::string config;
  std::string out;
  std::string format;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

int run_simulate(const SimulateOptions& opt) {
  RunConfig cfg = load_run_config(opt.config);
  if (!opt.out.empty()) cfg.output = opt.out;
  if (!opt.format.empty()) cfg.format = format_from_string(opt.format);
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.seed) {
    for (auto& s : cfg.experiments) s.seed = *opt.seed;
  }
  std::vector<ExperimentResult> results;
  results.reserve(cfg.experiments.size());
  for (const auto& spec : cfg.experiments) results.push_back(run_experiment(spec, cfg.threads));
  const TableDocument doc = cfg.layout ? emit_table(results, *cfg.layout) : emit_long(results);
  write_output(cfg.output, render(doc, cfg.format));
  return kExitOk;
}

struct TablesOptions {
  std::string table = "all";
  std::size_t m = 1000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string out_dir = ".";
  std::string format = "csv";
};

int run_tables(const TablesOptions& opt) {
  const OutputFormat format = format_from_string(opt.format);
  std::vector<int> tables;
  if (opt.table == "all") {
    tables = {1, 2, 3, 4, 5, 6, 7, 8};
  } else {
    tables.push_back(std::stoi(opt.table));
  }
  std::filesystem::create_directories(opt.out_dir);
  // MSE and relative-efficiency tables share their simulations.
  std::map<int, std::vector<ExperimentResult>> cache;
  for (int t : tables) {
    const TableLayout layout = layout_from_number(t);
    const int source_table = (t <= 6 && t % 2 == 0) ? t - 1 : t;
    auto& results = cache[source_table];
    if (results.empty()) {
      for (const auto& spec : table_scenarios(layout_from_number(source_table), default_grid(layout), opt.m, opt.seed)) {
        results.push_back(run_experiment(spec, opt.threads));
      }
    }
    const auto path = std::filesystem::path(opt.out_dir) /
                      (layout_name(layout) + (format == OutputFormat::Json ? ".json" : ".csv"));
    write_output(path.string(), render(emit_table(results, layout), format));
    std::cerr << "wrote " << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GPD shape estimation via the Pareto transformation"};
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run Monte Carlo experiments from a config file");
  simulate->add_option("--config", sim.config, "Run configuration")->required();
  simulate->add_option("--out", sim.out, "Output path ('-' for stdout)");
  simulate->add_option("--format", sim.format, "csv or json");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
  simulate->add_option("--seed", sim.seed, "Override every scenario seed");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the GPD shape from a data file");
  estimate->add_option("--data", est.data, "One value per line, '#' comments")->required();
  estimate->add_option("--method", est.method, "zs|pwm|mle|hill|pareto-ml|transformed-zs|transformed-pwm")
      ->required();
  estimate->add_option("--k", est.k, "Use the k largest values over X_(n-k)");
  estimate->add_flag("--fold", est.fold, "Threshold |x| instead of x (with --k)");
  estimate->add_flag("--excesses", est.excess_input, "Data are already excesses (location 0)");
  estimate->add_option("--offset", est.offset, "PWM plotting-position offset")->capture_default_str();
  estimate->add_option("--rounds", est.rounds, "Extra transform iterations")->capture_default_str();

  QuantileOptions qo;
  std::string prob_list;
  auto* quantile = app.add_subcommand("quantile", "GPD quantiles, direct or through a transformed fit");
  quantile->add_option("--mu", qo.mu);
  quantile->add_option("--sigma", qo.sigma);
  quantile->add_option("--xi", qo.xi);
  quantile->add_option("--fit", qo.fit, "Fit file written by 'estimate' for a transformed method");
  quantile->add_option("--p", prob_list, "Comma-separated probabilities")->required();

  TablesOptions tab;
  auto* tables = app.add_subcommand("tables", "Regenerate the reference tables");
  tables->add_option("--table", tab.table, "1..8 or all")->capture_default_str();
  tables->add_option("--m", tab.m, "Replications per cell")->capture_default_str();
  tables->add_option("--seed", tab.seed)->capture_default_str();
  tables->add_option("--threads", tab.threads)->capture_default_str();
  tables->add_option("--out-dir", tab.out_dir)->capture_default_str();
  tables->add_option("--format", tab.format)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*estimate) return run_estimate(est);
    if (*quantile) {
      std::size_t start = 0;
      while (start <= prob_list.size()) {
        const auto comma = prob_list.find(',', start);
        const std::string piece = prob_list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
          qo.probs.push_back(parse_number(piece));
        } catch (const DataError&) {
          throw ParameterError("--p: '" + piece + "' is not a number");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      return run_quantile(qo);
    }
    if (*tables) return run_tables(tab);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << sim.config << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const SingularityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
