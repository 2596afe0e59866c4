#include "gpdtail/transform.hpp"

#include <cmath>
#include <vector>

#include "gpdtail/error.hpp"

namespace gpdtail {

void TransformSpec::validate() const {
  if (!std::isfinite(mu_hat) || !std::isfinite(sigma_hat) || !std::isfinite(xi_hat)) {
    throw ParameterError("transform parameters must be finite");
  }
  if (sigma_hat <= 0.0) throw ParameterError("transform: sigma_hat must be > 0");
  if (form == Form::ThreeParameter && mu_hat <= 0.0) {
    throw ParameterError("transform: mu_hat must be > 0 for the three-parameter form");
  }
}

double TransformSpec::lower_bound() const {
  return form == Form::ThreeParameter ? mu_hat : sigma_hat;
}

double TransformSpec::slope() const {
  return form == Form::ThreeParameter ? xi_hat * mu_hat / sigma_hat : xi_hat;
}

TransformOutcome to_pareto(const Sample& x, const TransformSpec& spec) {
  spec.validate();
  if (x.empty()) throw DataError("to_pareto: empty sample");
  const double bound = spec.lower_bound();
  const double slope = spec.slope();
  std::vector<double> z(x.size());
  std::size_t clamped = 0;
  const auto values = x.values();
  for (std::size_t j = 0; j < values.size(); ++j) {
    double v;
    if (spec.form == TransformSpec::Form::ThreeParameter) {
      v = slope == 1.0 ? values[j] : spec.mu_hat + slope * (values[j] - spec.mu_hat);
    } else {
      v = spec.sigma_hat + slope * values[j];
    }
    if (!(v >= bound)) {
      v = bound;
      ++clamped;
    }
    z[j] = v;
  }
  return {Sample(std::move(z)), clamped};
}

FitResult transformed_shape_estimate(const Sample& x, const FitResult& initial, double mu_hat,
                                     ParetoScale scale) {
  EstimatorId id;
  switch (initial.estimator_id) {
    case EstimatorId::ZhangStephens:
    case EstimatorId::TransformedZS:
      id = EstimatorId::TransformedZS;
      break;
    case EstimatorId::PWM:
    case EstimatorId::TransformedPWM:
      id = EstimatorId::TransformedPWM;
      break;
    default:
      throw ParameterError("transform: initial fit must come from zs or pwm, got " +
                           std::string(to_string(initial.estimator_id)));
  }
  if (!initial.sigma_hat) throw ParameterError("transform: initial fit has no sigma_hat");

  const TransformSpec spec{mu_hat, *initial.sigma_hat, initial.xi_hat,
                           TransformSpec::Form::ThreeParameter};
  const TransformOutcome out = to_pareto(x, spec);
  FitResult fit = scale == ParetoScale::SampleMinimum ? estimate_pareto_ml(out.z)
                                                      : estimate_pareto_ml(out.z, mu_hat);
  fit.estimator_id = id;
  fit.sigma_hat = initial.sigma_hat;
  fit.diagnostics[diag::kClampCount] = static_cast<double>(out.clamp_count);
  return fit;
}

FitResult iterate_transform(const Sample& x, const FitResult& initial, double mu_hat,
                            std::size_t rounds, ParetoScale scale) {
  FitResult fit = transformed_shape_estimate(x, initial, mu_hat, scale);
  double clamps = fit.diagnostics[diag::kClampCount];
  for (std::size_t r = 0; r < rounds; ++r) {
    FitResult next_initial = initial;
    next_initial.xi_hat = fit.xi_hat;
    fit = transformed_shape_estimate(x, next_initial, mu_hat, scale);
    clamps += fit.diagnostics[diag::kClampCount];
  }
  if (rounds > 0) {
    fit.diagnostics[diag::kRounds] = static_cast<double>(rounds);
    fit.diagnostics[diag::kClampCount] = clamps;
  }
  return fit;
}

double gpd_quantile_via_transform(const TransformSpec& spec, double alpha_t, double prob) {
  spec.validate();
  if (!(spec.xi_hat > 0.0)) throw ParameterError("quantile back-transform requires xi_hat > 0");
  if (!(alpha_t > 0.0) || !std::isfinite(alpha_t)) throw ParameterError("alpha_t must be > 0");
  if (!(prob >= 0.0 && prob < 1.0)) {
    throw DomainError("probability must lie in [0, 1), got " + std::to_string(prob));
  }
  const double bound = spec.lower_bound();
  const double z = bound * std::exp(-std::log1p(-prob) / alpha_t);
  if (spec.form == TransformSpec::Form::ThreeParameter) {
    return (z - spec.mu_hat) * spec.sigma_hat / (spec.xi_hat * spec.mu_hat) + spec.mu_hat;
  }
  return (z - spec.sigma_hat) / spec.xi_hat;
}

double gpd_probability_via_transform(const TransformSpec& spec, double alpha_t, double x) {
  spec.validate();
  if (!(spec.xi_hat > 0.0)) throw ParameterError("probability back-transform requires xi_hat > 0");
  if (!(alpha_t > 0.0) || !std::isfinite(alpha_t)) throw ParameterError("alpha_t must be > 0");
  const double lower = spec.form == TransformSpec::Form::ThreeParameter ? spec.mu_hat : 0.0;
  if (std::isnan(x) || x < lower) throw DomainError("x is below the GPD support");
  const double bound = spec.lower_bound();
  double z;
  if (spec.form == TransformSpec::Form::ThreeParameter) {
    z = spec.mu_hat + spec.slope() * (x - spec.mu_hat);
  } else {
    z = spec.sigma_hat + spec.xi_hat * x;
  }
  return -std::expm1(alpha_t * std::log(bound / z));
}

}  // namespace gpdtail
