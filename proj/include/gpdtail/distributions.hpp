#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gpdtail/rng.hpp"

namespace gpdtail {

// Three-parameter generalized Pareto distribution
//   f(x) = (1/sigma) (1 + xi (x - mu) / sigma)^(-1 - 1/xi),  x >= mu.
// Only the heavy-tailed branch xi > 0 is supported.
struct GpdParams {
  double mu = 0.0;
  double sigma = 1.0;
  double xi = 1.0;

  // Throws ParameterError unless sigma > 0, xi > 0 and all fields are finite.
  void validate() const;
};

// Pareto type I with survival (z / mu)^(-alpha), z >= mu.
struct ParetoParams {
  double mu = 1.0;
  double alpha = 1.0;

  void validate() const;

  // The GPD with sigma = xi * mu is exactly this Pareto law with alpha = 1/xi.
  static ParetoParams from_gpd_reduction(double mu, double xi);
};

// Immutable observation vector with its ascending order statistics.
class Sample {
 public:
  Sample() = default;
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::span<const double> sorted() const { return sorted_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  // 1-indexed ascending order statistic x_(i).
  double order_stat(std::size_t i) const { return sorted_.at(i - 1); }

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
};

double gpd_pdf(const GpdParams& p, double x);
double gpd_cdf(const GpdParams& p, double x);
double gpd_sf(const GpdParams& p, double x);
double gpd_quantile(const GpdParams& p, double prob);
Sample sample_gpd(const GpdParams& p, std::size_t n, RngStream& rng);

double pareto_pdf(const ParetoParams& p, double z);
double pareto_sf(const ParetoParams& p, double z);
double pareto_quantile(const ParetoParams& p, double prob);
Sample sample_pareto(const ParetoParams& p, std::size_t n, RngStream& rng);

// Standard Student's t: N(0,1) / sqrt(chi2(df) / df).
Sample sample_student_t(double df, std::size_t n, RngStream& rng);

// Symmetric (beta = 0) standard alpha-stable draws, Chambers-Mallows-Stuck.
// index = 2 gives N(0, 2); index = 1 gives the standard Cauchy law.
Sample sample_symmetric_stable(double index, std::size_t n, RngStream& rng);

}  // namespace gpdtail
