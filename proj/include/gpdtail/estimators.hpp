#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gpdtail/distributions.hpp"

namespace gpdtail {

enum class EstimatorId {
  ParetoML,
  PWM,
  ZhangStephens,
  GpdMLE,
  Hill,
  TransformedZS,
  TransformedPWM,
};

// Short, stable names used in CLI flags and table headers:
// pareto-ml, pwm, zs, mle, hill, transformed-zs, transformed-pwm.
std::string_view to_string(EstimatorId id);
// Accepts the names above; throws ParameterError otherwise.
EstimatorId estimator_from_string(std::string_view name);

// Keys that may appear in FitResult::diagnostics.
namespace diag {
inline constexpr const char* kClampCount = "clamp_count";      // transformed values set to the bound
inline constexpr const char* kAlphaHat = "alpha_hat";          // 1 / xi_hat, present when xi_hat > 0
inline constexpr const char* kIterations = "optimizer_iterations";
inline constexpr const char* kConverged = "converged";         // 1 or 0
inline constexpr const char* kBoundary = "boundary";           // -1 lower, +1 upper search limit hit
inline constexpr const char* kTheta = "theta_hat";             // xi / sigma at the fit
inline constexpr const char* kGridSize = "grid_size";
inline constexpr const char* kRounds = "rounds";
}  // namespace diag

struct FitResult {
  double xi_hat = 0.0;
  std::optional<double> sigma_hat;
  std::optional<double> mu_hat;
  EstimatorId estimator_id = EstimatorId::ParetoML;
  std::map<std::string, double> diagnostics;

  // False only when the estimator flagged its own answer as unusable
  // (GPD MLE with no finite maximizer).
  bool converged() const;
};

// Empirical CDF ordinate (j - offset) / n for the j-th order statistic.
struct PlottingPosition {
  double offset = 0.35;

  void validate() const;
};

// Pareto type I maximum likelihood: mu_hat = min(z), xi_hat = mean log(z / mu_hat).
FitResult estimate_pareto_ml(const Sample& z);
// Same with a known scale; every value must be >= scale.
FitResult estimate_pareto_ml(const Sample& z, double scale);

// Probability-weighted moments for the mu = 0 GPD (Hosking & Wallis form).
// Throws SingularityError when a0 - 2 a1 is not positive (up to rounding).
FitResult estimate_pwm(const Sample& excesses, PlottingPosition pos = {});

// Zhang & Stephens (2009) empirical-Bayes estimator for the mu = 0 GPD.
FitResult estimate_zhang_stephens(const Sample& excesses);

// Maximum likelihood for the mu = 0 GPD restricted to xi > 0, through the
// profile likelihood in theta = xi / sigma. A sample whose profile is still
// increasing at the upper search limit has no finite MLE; the fit is then
// returned with converged = 0.
FitResult estimate_gpd_mle(const Sample& excesses);

// Hill: mean of log(X_(n-j+1) / X_(n-k)) over the k largest values.
FitResult estimate_hill(const Sample& x, std::size_t k);

// Profile log-likelihood of the mu = 0 GPD at theta = xi / sigma, with
// xi(theta) = mean log(1 + theta x). Requires 1 + theta x > 0 for all x.
// theta -> 0 is taken as the exponential limit.
double gpd_profile_loglik(std::span<const double> x, double theta);

}  // namespace gpdtail
