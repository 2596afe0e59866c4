#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "gpdtail/distributions.hpp"
#include "gpdtail/error.hpp"
#include "support/oracles.hpp"

using namespace gpdtail;
using Catch::Approx;

namespace {
std::vector<double> to_vec(const Sample& s) { return {s.values().begin(), s.values().end()}; }
}  // namespace

TEST_CASE("gpd_pdf reference values", "[distributions]") {
  CHECK(gpd_pdf({1, 1, 1}, 1.0) == 1.0);
  CHECK(gpd_pdf({0, 1, 1}, 1.0) == Approx(0.25).epsilon(1e-15));
  // (1/2)(1 + 0.25 * 2)^(-3) = 4/27
  CHECK(gpd_pdf({1, 2, 0.5}, 3.0) == Approx(4.0 / 27.0).epsilon(1e-14));
  // Cross-check: integral of the density from mu to 3 equals 1 - sf(3) = 1 - 1.5^-2.
  const GpdParams p{1, 2, 0.5};
  const double area = oracle::simpson([&](double x) { return gpd_pdf(p, x); }, 1.0, 3.0);
  CHECK(area == Approx(1.0 - 1.0 / 2.25).epsilon(1e-10));
}

TEST_CASE("gpd_sf reference values and Pareto reduction", "[distributions]") {
  CHECK(gpd_sf({1, 1, 1}, 1.0) == 1.0);
  CHECK(gpd_sf({0, 1, 1}, 1.0) == Approx(0.5).epsilon(1e-15));
  CHECK(gpd_sf({1, 0.5, 0.5}, 4.0) == Approx(0.0625).epsilon(1e-14));
}

TEST_CASE("gpd_quantile reference values", "[distributions]") {
  CHECK(gpd_quantile({0, 1, 1}, 0.5) == Approx(1.0).epsilon(1e-15));
  CHECK(gpd_quantile({3.5, 2, 0.7}, 0.0) == 3.5);
  // Bisection on gpd_sf = 0.1, frozen: 1 + 8 (10^0.25 - 1).
  const GpdParams p{1, 2, 0.25};
  const double root = oracle::bisect([&](double x) { return gpd_sf(p, x) - 0.1; }, 1.0, 1000.0);
  CHECK(root == Approx(7.226235280311382).epsilon(1e-12));
  CHECK(gpd_quantile(p, 0.9) == Approx(7.226235280311382).epsilon(1e-13));
}

TEST_CASE("GPD functions reject bad parameters and arguments", "[distributions]") {
  CHECK_THROWS_AS(gpd_pdf({1, 1, 1}, 0.5), DomainError);
  CHECK_THROWS_AS(gpd_sf({1, 1, 1}, 0.999), DomainError);
  CHECK_THROWS_AS(gpd_pdf({0, 0, 1}, 1.0), ParameterError);
  CHECK_THROWS_AS(gpd_pdf({0, -1, 1}, 1.0), ParameterError);
  CHECK_THROWS_AS(gpd_pdf({0, 1, 0}, 1.0), ParameterError);
  CHECK_THROWS_AS(gpd_pdf({0, 1, -0.2}, 1.0), ParameterError);
  CHECK_THROWS_AS(gpd_quantile({0, 1, 1}, 1.0), DomainError);
  CHECK_THROWS_AS(gpd_quantile({0, 1, 1}, -0.1), DomainError);
}

TEST_CASE("Pareto functions", "[distributions]") {
  CHECK(pareto_sf({1, 2}, 2.0) == Approx(0.25).epsilon(1e-15));
  CHECK(pareto_quantile({1, 1}, 0.5) == Approx(2.0).epsilon(1e-15));
  CHECK(pareto_pdf({1, 1}, 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(pareto_sf({1, 2}, 0.5), DomainError);
  CHECK_THROWS_AS(pareto_sf({0, 2}, 1.0), ParameterError);
  CHECK_THROWS_AS(pareto_sf({1, 0}, 1.0), ParameterError);
}

TEST_CASE("density is minus the derivative of the survival function", "[distributions][property]") {
  RngStream rng(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const GpdParams p{rng.uniform() * 4 - 2, 0.2 + rng.uniform() * 3, 0.05 + rng.uniform() * 0.95};
    const double x = p.mu + rng.uniform() * 10 * p.sigma / p.xi + 1e-3;
    const double h = 1e-5 * std::max(1.0, x - p.mu);
    const double fd = -oracle::central_difference([&](double t) { return gpd_sf(p, t); }, x, h);
    CHECK(fd == Approx(gpd_pdf(p, x)).margin(1e-6));
  }
}

TEST_CASE("quantile inverts the distribution function", "[distributions][property]") {
  RngStream rng(12, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const GpdParams p{rng.uniform() * 4 - 2, 0.2 + rng.uniform() * 3, 0.05 + rng.uniform() * 0.95};
    const double x = p.mu + rng.uniform() * 50 * p.sigma / p.xi;
    // Deep in the tail 1 - sf rounds to 1 and the inverse is undefined.
    if (gpd_sf(p, x) > 1e-6) {
      const double back = gpd_quantile(p, 1.0 - gpd_sf(p, x));
      CHECK(back == Approx(x).epsilon(1e-9).margin(1e-9));
    }
    const double prob = rng.uniform() * 0.999;
    CHECK(gpd_sf(p, gpd_quantile(p, prob)) == Approx(1.0 - prob).epsilon(1e-12));
  }
}

TEST_CASE("sigma = xi mu reduces the GPD to Pareto", "[distributions][property]") {
  RngStream rng(13, 0);
  for (int trial = 0; trial < 500; ++trial) {
    const double mu = 0.1 + rng.uniform() * 5;
    const double xi = 0.05 + rng.uniform() * 0.95;
    const double z = mu * (1.0 + rng.uniform() * 100);
    const ParetoParams par = ParetoParams::from_gpd_reduction(mu, xi);
    CHECK(gpd_sf({mu, xi * mu, xi}, z) == Approx(pareto_sf(par, z)).epsilon(1e-12));
  }
}

TEST_CASE("GPD sampler: support, determinism, fit", "[distributions][sampler]") {
  const GpdParams p{1, 1, 0.5};
  RngStream a(3, 4);
  RngStream b(3, 4);
  const Sample s1 = sample_gpd(p, 10000, a);
  const Sample s2 = sample_gpd(p, 10000, b);
  CHECK(to_vec(s1) == to_vec(s2));
  CHECK(s1.min() >= p.mu);
  CHECK(s1.min() - p.mu < 1e-2);
  // A uniform of 0 maps to the lower bound.
  CHECK(gpd_quantile(p, 0.0) == p.mu);

  int passes = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RngStream rng(seed, 0);
    const Sample s = sample_gpd(p, 10000, rng);
    const double d = oracle::ks_statistic(to_vec(s), [&](double x) { return 1.0 - gpd_sf(p, x); });
    if (d < oracle::ks_critical_1pct(s.size())) ++passes;
  }
  CHECK(passes >= 38);  // >= 95% of seeds
}

TEST_CASE("Pareto sampler fits its CDF", "[distributions][sampler]") {
  const ParetoParams p{1, 2};
  RngStream rng(21, 0);
  const Sample s = sample_pareto(p, 10000, rng);
  CHECK(s.min() >= 1.0);
  const double d = oracle::ks_statistic(to_vec(s), [&](double z) { return 1.0 - pareto_sf(p, z); });
  CHECK(d < oracle::ks_critical_1pct(s.size()));
}

TEST_CASE("Student's t sampler", "[distributions][sampler]") {
  SECTION("df = 1 is Cauchy") {
    RngStream rng(31, 0);
    const auto x = to_vec(sample_student_t(1.0, 100000, rng));
    CHECK(oracle::empirical_quantile(x, 0.5) == Approx(0.0).margin(0.02));
    const double iqr = oracle::empirical_quantile(x, 0.75) - oracle::empirical_quantile(x, 0.25);
    CHECK(iqr == Approx(2.0).margin(0.05));
    const double d = oracle::ks_statistic(x, [](double t) { return 0.5 + std::atan(t) / std::numbers::pi; });
    CHECK(d < oracle::ks_critical_1pct(x.size()));
  }
  SECTION("df = 5 variance") {
    RngStream rng(32, 0);
    const auto x = to_vec(sample_student_t(5.0, 100000, rng));
    CHECK(oracle::variance(x) == Approx(5.0 / 3.0).epsilon(0.10));
  }
  SECTION("determinism and errors") {
    RngStream a(33, 2);
    RngStream b(33, 2);
    CHECK(to_vec(sample_student_t(3.0, 100, a)) == to_vec(sample_student_t(3.0, 100, b)));
    CHECK_THROWS_AS(sample_student_t(0.0, 10, a), ParameterError);
    CHECK_THROWS_AS(sample_student_t(-1.0, 10, a), ParameterError);
  }
}

TEST_CASE("symmetric stable sampler", "[distributions][sampler]") {
  SECTION("index 2 is N(0, 2)") {
    RngStream rng(41, 0);
    const auto x = to_vec(sample_symmetric_stable(2.0, 100000, rng));
    CHECK(oracle::variance(x) == Approx(2.0).epsilon(0.10));
    const auto y = std::vector<double>(x.begin(), x.begin() + 10000);
    const double d = oracle::ks_statistic(y, [](double t) { return 0.5 * std::erfc(-t / 2.0); });
    CHECK(d < oracle::ks_critical_1pct(y.size()));
  }
  SECTION("index 1 is Cauchy") {
    RngStream rng(42, 0);
    const auto x = to_vec(sample_symmetric_stable(1.0, 100000, rng));
    CHECK(oracle::empirical_quantile(x, 0.25) == Approx(-1.0).margin(0.03));
    CHECK(oracle::empirical_quantile(x, 0.75) == Approx(1.0).margin(0.03));
    const auto y = std::vector<double>(x.begin(), x.begin() + 10000);
    const double d = oracle::ks_statistic(y, [](double t) { return 0.5 + std::atan(t) / std::numbers::pi; });
    CHECK(d < oracle::ks_critical_1pct(y.size()));
  }
  SECTION("other indices are symmetric about 0") {
    for (double index : {1.9, 1.7, 1.5, 1.3, 0.8}) {
      RngStream rng(43, 0);
      const auto x = to_vec(sample_symmetric_stable(index, 10000, rng));
      CHECK(oracle::empirical_quantile(x, 0.5) == Approx(0.0).margin(0.05));
    }
  }
  SECTION("determinism and errors") {
    RngStream a(44, 1);
    RngStream b(44, 1);
    CHECK(to_vec(sample_symmetric_stable(1.5, 100, a)) == to_vec(sample_symmetric_stable(1.5, 100, b)));
    CHECK_THROWS_AS(sample_symmetric_stable(0.0, 10, a), ParameterError);
    CHECK_THROWS_AS(sample_symmetric_stable(2.1, 10, a), ParameterError);
  }
}

TEST_CASE("Sample keeps values and order statistics", "[distributions]") {
  const Sample s({3.0, 1.0, 2.0});
  CHECK(s.values()[0] == 3.0);
  CHECK(s.sorted()[0] == 1.0);
  CHECK(s.order_stat(3) == 3.0);
  CHECK(s.min() == 1.0);
  CHECK(s.max() == 3.0);
}
