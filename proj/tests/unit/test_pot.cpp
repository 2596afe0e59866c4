#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gpdtail/distributions.hpp"
#include "gpdtail/error.hpp"
#include "gpdtail/pot.hpp"
#include "gpdtail/transform.hpp"

using namespace gpdtail;
using Catch::Approx;

TEST_CASE("threshold is the (n-k)-th order statistic", "[pot]") {
  const Sample x({5.0, 1.0, 4.0, 2.0, 3.0});
  CHECK(select_threshold(x, 1) == 4.0);
  CHECK(select_threshold(x, 4) == 1.0);
  CHECK_THROWS_AS(select_threshold(x, 0), ParameterError);
  CHECK_THROWS_AS(select_threshold(x, 5), ParameterError);
}

TEST_CASE("excesses keep order and drop values at the threshold", "[pot]") {
  const Sample e = excesses(Sample({3.0, 1.0, 5.0, 2.0, 2.0}), 2.0);
  CHECK(std::vector<double>(e.values().begin(), e.values().end()) == std::vector<double>{1.0, 3.0});
  CHECK_THROWS_AS(excesses(Sample({1.0, 2.0, 3.0}), 2.0), DataError);
}

TEST_CASE("every excess is positive and there are k of them", "[pot][property]") {
  RngStream rng(301, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const Sample x = sample_student_t(3.0, 400, rng);
    const std::size_t k = 10 + static_cast<std::size_t>(rng.uniform() * 100);
    const Sample e = excesses(x, select_threshold(x, k));
    CHECK(e.size() == k);
    CHECK(e.min() > 0.0);
  }
}

TEST_CASE("pot_estimate matches the estimators run by hand", "[pot]") {
  RngStream rng(302, 0);
  const Sample x = sample_gpd({1, 1, 0.4}, 1000, rng);
  PotConfig cfg;
  cfg.k = 100;
  cfg.estimators = {EstimatorId::ZhangStephens, EstimatorId::GpdMLE, EstimatorId::Hill,
                    EstimatorId::TransformedZS, EstimatorId::PWM, EstimatorId::TransformedPWM,
                    EstimatorId::ParetoML};
  const PotResult res = pot_estimate(x, cfg);
  REQUIRE(res.failures.empty());
  const double u = select_threshold(x, 100);
  const Sample e = excesses(x, u);
  CHECK(res.threshold == u);
  CHECK(res.excess_count == 100);
  CHECK(res.fits.at(EstimatorId::ZhangStephens).xi_hat == estimate_zhang_stephens(e).xi_hat);
  CHECK(res.fits.at(EstimatorId::PWM).xi_hat == estimate_pwm(e).xi_hat);
  CHECK(res.fits.at(EstimatorId::GpdMLE).xi_hat == estimate_gpd_mle(e).xi_hat);
  CHECK(res.fits.at(EstimatorId::Hill).xi_hat == estimate_hill(x, 100).xi_hat);
  // Pareto ML on the raw exceedances with the threshold as scale is Hill.
  CHECK(res.fits.at(EstimatorId::ParetoML).xi_hat == Approx(res.fits.at(EstimatorId::Hill).xi_hat).epsilon(1e-12));

  // Transformed Z&S: log-mean of 1 + (xi/sigma) e over the excesses.
  const FitResult& zs = res.fits.at(EstimatorId::ZhangStephens);
  double acc = 0.0;
  for (double v : e.values()) acc += std::log1p(zs.xi_hat / *zs.sigma_hat * v);
  CHECK(res.fits.at(EstimatorId::TransformedZS).xi_hat == Approx(acc / 100.0).epsilon(1e-12));
}

TEST_CASE("folding uses absolute values", "[pot]") {
  std::vector<double> v;
  for (int i = 1; i <= 50; ++i) v.push_back(i % 2 ? -std::pow(1.1, i) : std::pow(1.1, i));
  PotConfig cfg;
  cfg.k = 10;
  cfg.estimators = {EstimatorId::Hill};
  cfg.fold_absolute = true;
  const PotResult folded = pot_estimate(Sample(v), cfg);
  CHECK(folded.threshold == Approx(std::pow(1.1, 40)).epsilon(1e-14));
  CHECK(folded.fits.at(EstimatorId::Hill).xi_hat == Approx(5.5 * std::log(1.1)).epsilon(1e-12));

  cfg.fold_absolute = false;
  const PotResult raw = pot_estimate(Sample(v), cfg);
  CHECK(raw.threshold == Approx(std::pow(1.1, 30)).epsilon(1e-14));
}

TEST_CASE("estimator failures are reported, not thrown", "[pot]") {
  // Threshold below zero: Hill and the transformed estimate cannot run.
  std::vector<double> v;
  for (int i = 0; i < 20; ++i) v.push_back(-10.0 + i * 0.5);
  PotConfig cfg;
  cfg.k = 15;
  const PotResult res = pot_estimate(Sample(v), cfg);
  CHECK(res.failures.count(EstimatorId::Hill) == 1);
  CHECK(res.failures.count(EstimatorId::TransformedZS) == 1);
  CHECK(res.fits.count(EstimatorId::ZhangStephens) == 1);
  for (const auto& [id, _] : res.fits) CHECK(res.failures.count(id) == 0);

  cfg.k = 20;
  CHECK_THROWS_AS(pot_estimate(Sample(v), cfg), ParameterError);
  cfg.k = 5;
  cfg.estimators.clear();
  CHECK_THROWS_AS(pot_estimate(Sample(v), cfg), ParameterError);
}
