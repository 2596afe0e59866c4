#pragma once

#include <cstddef>

#include "gpdtail/distributions.hpp"
#include "gpdtail/estimators.hpp"

namespace gpdtail {

// Maps GPD observations onto Pareto type I observations with the same tail
// index using (estimated) GPD parameters.
//
//   ThreeParameter:  z = mu + (xi mu / sigma)(x - mu),  Pareto(mu, 1/xi) for z >= mu
//   TwoParameter:    z = sigma + xi x,                  Pareto(sigma, 1/xi) for z >= sigma
//
// xi_hat <= 0 is accepted: the slope is then non-positive, so every value
// above the location lands on or below the bound and is clamped.
struct TransformSpec {
  enum class Form { ThreeParameter, TwoParameter };

  double mu_hat = 1.0;
  double sigma_hat = 1.0;
  double xi_hat = 1.0;
  Form form = Form::ThreeParameter;

  void validate() const;
  // Pareto support bound: mu_hat (three-parameter) or sigma_hat (two-parameter).
  double lower_bound() const;
  // Slope of the affine map.
  double slope() const;
};

struct TransformOutcome {
  Sample z;
  std::size_t clamp_count = 0;
};

TransformOutcome to_pareto(const Sample& x, const TransformSpec& spec);

// Scale used by the Pareto ML step on the transformed sample.
enum class ParetoScale {
  SampleMinimum,   // mu_hat = min(z)
  TransformBound,  // mu_hat = the transform's lower bound (direct log-mean form)
};

// Transform x with (mu_hat, initial.sigma_hat, initial.xi_hat) and estimate xi
// by Pareto ML. initial must be a ZhangStephens or PWM fit; the result is tagged
// TransformedZS / TransformedPWM and carries clamp_count and alpha_hat.
FitResult transformed_shape_estimate(const Sample& x, const FitResult& initial, double mu_hat,
                                     ParetoScale scale = ParetoScale::SampleMinimum);

// rounds = 0 is transformed_shape_estimate. Each further round keeps sigma_hat
// and mu_hat of the initial fit and replaces xi_hat by the previous estimate.
FitResult iterate_transform(const Sample& x, const FitResult& initial, double mu_hat,
                            std::size_t rounds, ParetoScale scale = ParetoScale::SampleMinimum);

// GPD percentile through the Pareto route: z_p = bound (1 - prob)^(-1/alpha_t)
// mapped back through the inverse transform. Requires xi_hat > 0.
double gpd_quantile_via_transform(const TransformSpec& spec, double alpha_t, double prob);

// Inverse of the above: prob = 1 - (bound / z(x))^alpha_t.
double gpd_probability_via_transform(const TransformSpec& spec, double alpha_t, double x);

}  // namespace gpdtail
