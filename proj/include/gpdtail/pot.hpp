#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "gpdtail/distributions.hpp"
#include "gpdtail/estimators.hpp"

namespace gpdtail {

struct PotConfig {
  std::size_t k = 100;  // number of exceedances; the threshold is X_(n-k)
  std::vector<EstimatorId> estimators = {EstimatorId::ZhangStephens, EstimatorId::GpdMLE,
                                         EstimatorId::Hill, EstimatorId::TransformedZS};
  // Replace the sample by |x| before thresholding, so both tails of a
  // symmetric law feed the top k.
  bool fold_absolute = false;

  void validate(std::size_t n) const;
};

struct PotResult {
  double threshold = 0.0;
  std::size_t excess_count = 0;
  std::map<EstimatorId, FitResult> fits;
  // Estimators that threw, with the error message. A fit never appears in both maps.
  std::map<EstimatorId, std::string> failures;
};

// X_(n-k), 1-indexed ascending. Requires 1 <= k < n.
double select_threshold(const Sample& x, std::size_t k);

// {x_j - threshold : x_j > threshold}, input order preserved. Throws DataError
// if fewer than 2 values exceed the threshold.
Sample excesses(const Sample& x, double threshold);

// Z&S and GPD-MLE run on the excesses, Hill on the raw k largest values over
// X_(n-k). The transformed Z&S estimate maps the raw exceedances with the Z&S
// fit and location mu_hat = X_(n-k), using the threshold as the Pareto scale.
PotResult pot_estimate(const Sample& x, const PotConfig& cfg);

}  // namespace gpdtail
