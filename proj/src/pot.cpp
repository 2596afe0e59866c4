#include "gpdtail/pot.hpp"

#include <cmath>
#include <optional>

#include "gpdtail/error.hpp"
#include "gpdtail/transform.hpp"

namespace gpdtail {

void PotConfig::validate(std::size_t n) const {
  if (k < 1 || k >= n) {
    throw ParameterError("pot: k must satisfy 1 <= k < n (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");
  }
  if (estimators.empty()) throw ParameterError("pot: empty estimator set");
}

double select_threshold(const Sample& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k >= n) {
    throw ParameterError("select_threshold: k must satisfy 1 <= k < n (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");
  }
  return x.sorted()[n - k - 1];
}

Sample excesses(const Sample& x, double threshold) {
  std::vector<double> out;
  for (double v : x.values()) {
    if (v > threshold) out.push_back(v - threshold);
  }
  if (out.size() < 2) {
    throw DataError("excesses: " + std::to_string(out.size()) +
                    " values above the threshold, at least 2 required");
  }
  return Sample(std::move(out));
}

PotResult pot_estimate(const Sample& input, const PotConfig& cfg) {
  cfg.validate(input.size());
  std::optional<Sample> folded;
  if (cfg.fold_absolute) {
    std::vector<double> v(input.values().begin(), input.values().end());
    for (double& e : v) e = std::abs(e);
    folded.emplace(std::move(v));
  }
  const Sample& x = folded ? *folded : input;

  PotResult result;
  result.threshold = select_threshold(x, cfg.k);
  const Sample excess = excesses(x, result.threshold);
  result.excess_count = excess.size();

  std::vector<double> raw_top;
  raw_top.reserve(excess.size());
  for (double v : x.values()) {
    if (v > result.threshold) raw_top.push_back(v);
  }
  const Sample top(std::move(raw_top));

  std::optional<FitResult> zs_fit;
  std::optional<FitResult> pwm_fit;
  auto initial = [&](EstimatorId base) -> const FitResult& {
    auto& slot = base == EstimatorId::ZhangStephens ? zs_fit : pwm_fit;
    if (!slot) {
      slot = base == EstimatorId::ZhangStephens ? estimate_zhang_stephens(excess)
                                                : estimate_pwm(excess);
    }
    return *slot;
  };

  for (EstimatorId id : cfg.estimators) {
    try {
      FitResult fit;
      switch (id) {
        case EstimatorId::ZhangStephens:
        case EstimatorId::PWM:
          fit = initial(id);
          break;
        case EstimatorId::GpdMLE:
          fit = estimate_gpd_mle(excess);
          break;
        case EstimatorId::Hill:
          fit = estimate_hill(x, cfg.k);
          break;
        case EstimatorId::ParetoML:
          fit = estimate_pareto_ml(top, result.threshold);
          break;
        case EstimatorId::TransformedZS:
          fit = transformed_shape_estimate(top, initial(EstimatorId::ZhangStephens),
                                           result.threshold, ParetoScale::TransformBound);
          break;
        case EstimatorId::TransformedPWM:
          fit = transformed_shape_estimate(top, initial(EstimatorId::PWM), result.threshold,
                                           ParetoScale::TransformBound);
          break;
      }
      result.fits.emplace(id, std::move(fit));
    } catch (const std::exception& e) {
      result.failures.emplace(id, e.what());
    }
  }
  return result;
}

}  // namespace gpdtail
