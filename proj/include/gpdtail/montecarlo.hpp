#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gpdtail/distributions.hpp"
#include "gpdtail/estimators.hpp"

namespace gpdtail {

// Default seed used whenever none is given, so bare runs reproduce the
// shipped reference tables.
inline constexpr std::uint64_t kDefaultSeed = 20100611;

struct GpdSource {
  GpdParams params;
};
// GPD with sigma = xi * mu, i.e. an exact Pareto(mu, 1/xi) sample.
struct GpdParetoCase {
  double mu = 1.0;
  double xi = 0.5;
};
struct StudentTSource {
  double df = 3.0;
};
struct StableSource {
  double index = 1.5;
};
using Source = std::variant<GpdSource, GpdParetoCase, StudentTSource, StableSource>;

// Shape the estimators are scored against: xi for GPD sources, 1/df for
// Student's t, 1/index for symmetric stable.
double true_shape(const Source& source);
std::string source_name(const Source& source);
GpdParams gpd_params(const GpdParetoCase& c);

struct ExperimentSpec {
  Source source = GpdSource{};
  std::size_t n = 100;
  std::size_t m = 1000;
  // Present for peaks-over-threshold experiments.
  std::optional<std::size_t> k;
  // Empty means the paper's set for the experiment kind.
  std::vector<EstimatorId> estimators;
  std::uint64_t seed = kDefaultSeed;
  std::size_t rounds = 0;
  bool fold_absolute = false;

  void validate() const;
  bool is_pot() const { return k.has_value(); }
  std::vector<EstimatorId> effective_estimators() const;
  // Sample size entering the asymptotic variance (1 + xi)^2 / n: n for
  // whole-sample fits, k for POT fits.
  std::size_t efficiency_size() const;
};

struct ReplicationSummary {
  EstimatorId estimator_id = EstimatorId::ZhangStephens;
  std::size_t used = 0;      // replications that produced an estimate
  std::size_t failures = 0;  // replications excluded for this estimator
  double mean_estimate = 0.0;
  double mse = 0.0;
  double bias = 0.0;
  double variance = 0.0;  // 1/used normalization, so mse = bias^2 + variance
  double rel_eff = 0.0;
  double mc_se_mse = 0.0;   // sample sd of squared errors / sqrt(used)
  double mc_se_bias = 0.0;  // sample sd of estimates / sqrt(used)
  double mean_clamp = 0.0;  // mean clamp_count, transformed estimators only
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<ReplicationSummary> summaries;

  const ReplicationSummary& summary(EstimatorId id) const;
};

// Per-replication estimates, indexed [estimator][replication]; nullopt marks
// a failed replication.
struct ReplicationTable {
  std::vector<EstimatorId> estimators;
  std::vector<std::vector<std::optional<double>>> estimates;
  std::vector<std::vector<double>> clamps;
};

// threads = 0 uses the hardware concurrency. Results do not depend on threads.
ReplicationTable simulate_replications(const ExperimentSpec& spec, unsigned threads = 0);
ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads = 0);

// (1/m) sum (est - true_xi)^2
double mse(std::span<const double> estimates, double true_xi);
// true_xi - mean(est)
double bias(std::span<const double> estimates, double true_xi);
// ((1 + xi)^2 / n) / mse; +infinity when mse == 0.
double relative_efficiency(double mse_value, double true_xi, std::size_t n);

ReplicationSummary summarize(EstimatorId id, std::span<const double> estimates, std::size_t failures,
                             double true_xi, std::size_t efficiency_n);

}  // namespace gpdtail
