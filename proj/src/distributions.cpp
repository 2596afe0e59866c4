#include "gpdtail/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gpdtail/error.hpp"

namespace gpdtail {
namespace {

void require_count(std::size_t n) {
  if (n < 1) throw ParameterError("sample size must be at least 1");
}

void require_support(double x, double lower, const char* what) {
  if (std::isnan(x) || x < lower) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) +
                      " is below the support bound " + std::to_string(lower));
  }
}

void require_prob(double prob) {
  if (!(prob >= 0.0 && prob < 1.0)) {
    throw DomainError("probability must lie in [0, 1), got " + std::to_string(prob));
  }
}

}  // namespace

void GpdParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || !std::isfinite(xi)) {
    throw ParameterError("GPD parameters must be finite");
  }
  if (sigma <= 0.0) throw ParameterError("GPD scale sigma must be > 0");
  if (xi <= 0.0) throw ParameterError("GPD shape xi must be > 0 (short-tailed branch unsupported)");
}

void ParetoParams::validate() const {
  if (!std::isfinite(mu) || !std::isfinite(alpha)) {
    throw ParameterError("Pareto parameters must be finite");
  }
  if (mu <= 0.0) throw ParameterError("Pareto scale mu must be > 0");
  if (alpha <= 0.0) throw ParameterError("Pareto tail index alpha must be > 0");
}

ParetoParams ParetoParams::from_gpd_reduction(double mu, double xi) {
  ParetoParams p{mu, 1.0 / xi};
  p.validate();
  return p;
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)), sorted_(values_) {
  std::sort(sorted_.begin(), sorted_.end());
}

double gpd_pdf(const GpdParams& p, double x) {
  p.validate();
  require_support(x, p.mu, "gpd_pdf");
  const double t = p.xi * (x - p.mu) / p.sigma;
  return std::exp(-(1.0 + 1.0 / p.xi) * std::log1p(t)) / p.sigma;
}

double gpd_sf(const GpdParams& p, double x) {
  p.validate();
  require_support(x, p.mu, "gpd_sf");
  const double t = p.xi * (x - p.mu) / p.sigma;
  return std::exp(-std::log1p(t) / p.xi);
}

double gpd_cdf(const GpdParams& p, double x) {
  p.validate();
  require_support(x, p.mu, "gpd_cdf");
  const double t = p.xi * (x - p.mu) / p.sigma;
  return -std::expm1(-std::log1p(t) / p.xi);
}

double gpd_quantile(const GpdParams& p, double prob) {
  p.validate();
  require_prob(prob);
  // (1 - prob)^(-xi) - 1 evaluated without cancellation near prob = 0.
  return p.mu + (p.sigma / p.xi) * std::expm1(-p.xi * std::log1p(-prob));
}

Sample sample_gpd(const GpdParams& p, std::size_t n, RngStream& rng) {
  p.validate();
  require_count(n);
  std::vector<double> out(n);
  for (auto& v : out) v = gpd_quantile(p, rng.uniform());
  return Sample(std::move(out));
}

double pareto_pdf(const ParetoParams& p, double z) {
  p.validate();
  require_support(z, p.mu, "pareto_pdf");
  return p.alpha / p.mu * std::pow(p.mu / z, p.alpha + 1.0);
}

double pareto_sf(const ParetoParams& p, double z) {
  p.validate();
  require_support(z, p.mu, "pareto_sf");
  return std::pow(z / p.mu, -p.alpha);
}

double pareto_quantile(const ParetoParams& p, double prob) {
  p.validate();
  require_prob(prob);
  return p.mu * std::exp(-std::log1p(-prob) / p.alpha);
}

Sample sample_pareto(const ParetoParams& p, std::size_t n, RngStream& rng) {
  p.validate();
  require_count(n);
  std::vector<double> out(n);
  for (auto& v : out) v = pareto_quantile(p, rng.uniform());
  return Sample(std::move(out));
}

Sample sample_student_t(double df, std::size_t n, RngStream& rng) {
  if (!(df > 0.0) || !std::isfinite(df)) throw ParameterError("Student's t df must be > 0");
  require_count(n);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::gamma_distribution<double> half_chi2(0.5 * df, 1.0);
  std::vector<double> out(n);
  for (auto& v : out) {
    const double z = normal(rng);
    const double chi2 = 2.0 * half_chi2(rng);
    v = z / std::sqrt(chi2 / df);
  }
  return Sample(std::move(out));
}

Sample sample_symmetric_stable(double index, std::size_t n, RngStream& rng) {
  if (!(index > 0.0 && index <= 2.0)) {
    throw ParameterError("stable index must lie in (0, 2]");
  }
  require_count(n);
  constexpr double kPi = std::numbers::pi;
  std::vector<double> out(n);
  for (auto& v : out) {
    const double angle = kPi * (rng.uniform() - 0.5);
    if (index == 1.0) {
      v = std::tan(angle);
      continue;
    }
    const double w = -std::log(rng.uniform_pos());
    v = std::sin(index * angle) / std::pow(std::cos(angle), 1.0 / index) *
        std::pow(std::cos((1.0 - index) * angle) / w, (1.0 - index) / index);
  }
  return Sample(std::move(out));
}

}  // namespace gpdtail
