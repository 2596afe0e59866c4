#include "gpdtail/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "gpdtail/error.hpp"

namespace gpdtail {
namespace {

constexpr std::array<std::pair<EstimatorId, std::string_view>, 7> kNames = {{
    {EstimatorId::ParetoML, "pareto-ml"},
    {EstimatorId::PWM, "pwm"},
    {EstimatorId::ZhangStephens, "zs"},
    {EstimatorId::GpdMLE, "mle"},
    {EstimatorId::Hill, "hill"},
    {EstimatorId::TransformedZS, "transformed-zs"},
    {EstimatorId::TransformedPWM, "transformed-pwm"},
}};

void require_excess_sample(const Sample& s, const char* who) {
  if (s.size() < 2) throw DataError(std::string(who) + ": at least 2 observations required");
  if (!std::isfinite(s.max()) || !(s.min() >= 0.0)) {
    throw DataError(std::string(who) + ": excesses must be finite and non-negative");
  }
}

double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// xi(theta) = mean log(1 + theta x)
double profile_shape(std::span<const double> x, double theta) {
  double acc = 0.0;
  for (double v : x) acc += std::log1p(theta * v);
  return acc / static_cast<double>(x.size());
}

void set_alpha(FitResult& fit) {
  if (fit.xi_hat > 0.0) fit.diagnostics[diag::kAlphaHat] = 1.0 / fit.xi_hat;
}

}  // namespace

std::string_view to_string(EstimatorId id) {
  for (const auto& [key, name] : kNames) {
    if (key == id) return name;
  }
  return "unknown";
}

EstimatorId estimator_from_string(std::string_view name) {
  for (const auto& [key, label] : kNames) {
    if (label == name) return key;
  }
  throw ParameterError("unknown estimator '" + std::string(name) + "'");
}

bool FitResult::converged() const {
  auto it = diagnostics.find(diag::kConverged);
  return it == diagnostics.end() || it->second != 0.0;
}

void PlottingPosition::validate() const {
  if (!(offset >= 0.0 && offset < 1.0)) throw ParameterError("plotting position offset must lie in [0, 1)");
}

double gpd_profile_loglik(std::span<const double> x, double theta) {
  const auto n = static_cast<double>(x.size());
  const double xmax = *std::max_element(x.begin(), x.end());
  if (std::abs(theta) * xmax < 1e-12) {
    // exponential limit: theta / xi(theta) -> 1 / mean(x)
    return n * (-std::log(mean(x)) - 1.0);
  }
  const double xi = profile_shape(x, theta);
  return n * (std::log(theta / xi) - xi - 1.0);
}

FitResult estimate_pareto_ml(const Sample& z) {
  if (z.size() < 2) throw DataError("pareto-ml: at least 2 observations required");
  if (!(z.min() > 0.0)) throw DataError("pareto-ml: all observations must be > 0");
  return estimate_pareto_ml(z, z.min());
}

FitResult estimate_pareto_ml(const Sample& z, double scale) {
  if (z.empty()) throw DataError("pareto-ml: empty sample");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("pareto-ml: scale must be > 0");
  if (z.min() < scale) throw DataError("pareto-ml: observation below the scale parameter");
  double acc = 0.0;
  for (double v : z.values()) acc += std::log(v / scale);
  FitResult fit;
  fit.estimator_id = EstimatorId::ParetoML;
  fit.xi_hat = acc / static_cast<double>(z.size());
  fit.mu_hat = scale;
  set_alpha(fit);
  return fit;
}

FitResult estimate_pwm(const Sample& excesses, PlottingPosition pos) {
  pos.validate();
  require_excess_sample(excesses, "pwm");
  const auto sorted = excesses.sorted();
  const auto n = static_cast<double>(sorted.size());
  double a0 = 0.0;
  double a1 = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    const double p = (static_cast<double>(j + 1) - pos.offset) / n;
    a0 += sorted[j];
    a1 += (1.0 - p) * sorted[j];
  }
  a0 /= n;
  a1 /= n;
  const double denom = a0 - 2.0 * a1;
  // Relative cutoff: cancellation leaves rounding noise where the exact value is 0.
  if (!(denom > 1e-12 * a0)) {
    throw SingularityError("pwm: a0 - 2 a1 = " + std::to_string(denom) + " is not positive");
  }
  FitResult fit;
  fit.estimator_id = EstimatorId::PWM;
  fit.xi_hat = 2.0 - a0 / denom;
  fit.sigma_hat = 2.0 * a0 * a1 / denom;
  fit.mu_hat = 0.0;
  set_alpha(fit);
  return fit;
}

FitResult estimate_zhang_stephens(const Sample& excesses) {
  require_excess_sample(excesses, "zs");
  const auto x = excesses.sorted();
  const std::size_t n = x.size();
  if (!(x.back() > 0.0)) throw DataError("zs: sample has no positive value");

  const std::size_t grid = 20 + static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  // First-quartile order statistic x_(floor(n/4 + 1/2)); a zero quartile falls
  // back to the smallest positive value so the grid stays finite.
  double quartile = x[static_cast<std::size_t>(std::floor(static_cast<double>(n) / 4.0 + 0.5)) - 1];
  if (!(quartile > 0.0)) quartile = *std::upper_bound(x.begin(), x.end(), 0.0);

  // Z&S parameterize by b = -xi / sigma with b < 1 / x_(n); theta = -b here.
  std::vector<double> theta(grid);
  std::vector<double> loglik(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double jj = static_cast<double>(j + 1);
    const double b = 1.0 / x.back() +
                     (1.0 - std::sqrt(static_cast<double>(grid) / (jj - 0.5))) / (3.0 * quartile);
    theta[j] = -b;
    loglik[j] = gpd_profile_loglik(x, theta[j]);
  }
  // Posterior weights w_j = 1 / sum_i exp(l_i - l_j), computed as a softmax.
  const double lmax = *std::max_element(loglik.begin(), loglik.end());
  double norm = 0.0;
  for (double l : loglik) norm += std::exp(l - lmax);
  double theta_hat = 0.0;
  for (std::size_t j = 0; j < grid; ++j) theta_hat += std::exp(loglik[j] - lmax) / norm * theta[j];

  FitResult fit;
  fit.estimator_id = EstimatorId::ZhangStephens;
  fit.mu_hat = 0.0;
  if (std::abs(theta_hat) * x.back() < 1e-12) {
    fit.xi_hat = 0.0;
    fit.sigma_hat = mean(x);
  } else {
    fit.xi_hat = profile_shape(x, theta_hat);
    fit.sigma_hat = fit.xi_hat / theta_hat;
  }
  fit.diagnostics[diag::kTheta] = theta_hat;
  fit.diagnostics[diag::kGridSize] = static_cast<double>(grid);
  set_alpha(fit);
  return fit;
}

FitResult estimate_gpd_mle(const Sample& excesses) {
  require_excess_sample(excesses, "mle");
  const auto x = excesses.sorted();
  const double xbar = mean(x);
  if (!(xbar > 0.0)) throw DataError("mle: sample has no positive value");

  constexpr int kScan = 200;
  const double log_hi = std::log(1e4 / xbar);
  const double log_lo = std::log(1e-6 / xbar);
  auto objective = [&](double log_theta) { return gpd_profile_loglik(x, std::exp(log_theta)); };

  int best = 0;
  double best_val = -INFINITY;
  for (int i = 0; i < kScan; ++i) {
    const double lt = log_lo + (log_hi - log_lo) * i / (kScan - 1);
    const double v = objective(lt);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double step = (log_hi - log_lo) / (kScan - 1);
  double a = log_lo + step * std::max(best - 1, 0);
  double b = log_lo + step * std::min(best + 1, kScan - 1);

  // Golden-section on log(theta); a width of 1e-10 in log space is a relative
  // tolerance of 1e-10 on theta.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  int iterations = 0;
  while (b - a > 1e-10 && iterations < 500) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
    ++iterations;
  }
  double log_theta = 0.5 * (a + b);
  if (objective(log_theta) < best_val) log_theta = log_lo + step * best;

  // The profile is flat at its peak, so comparing likelihood values pins the
  // maximizer only to about sqrt(eps). Finish by bisecting the score
  // d l / d log(theta) = n (1 - mean(theta x / (1 + theta x)) (1 / xi + 1))
  // over the scan bracket, which resolves it to rounding.
  auto score = [&](double lt) {
    const double t = std::exp(lt);
    double frac = 0.0;
    for (double v : x) frac += t * v / (1.0 + t * v);
    frac /= static_cast<double>(x.size());
    return 1.0 - frac * (1.0 / profile_shape(x, t) + 1.0);
  };
  if (best > 0 && best < kScan - 1) {
    double lo = log_lo + step * (best - 1);
    double hi = log_lo + step * (best + 1);
    if (score(lo) > 0.0 && score(hi) < 0.0) {
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (score(mid) > 0.0 ? lo : hi) = mid;
        ++iterations;
      }
      log_theta = 0.5 * (lo + hi);
    }
  }
  const double theta = std::exp(log_theta);

  FitResult fit;
  fit.estimator_id = EstimatorId::GpdMLE;
  fit.xi_hat = profile_shape(x, theta);
  fit.sigma_hat = fit.xi_hat / theta;
  fit.mu_hat = 0.0;
  fit.diagnostics[diag::kTheta] = theta;
  fit.diagnostics[diag::kIterations] = iterations;
  fit.diagnostics[diag::kConverged] = 1.0;
  fit.diagnostics[diag::kBoundary] = 0.0;
  if (best == kScan - 1) {
    // Likelihood still increasing at the upper search limit: sigma -> 0,
    // xi -> infinity, no finite maximizer.
    fit.diagnostics[diag::kConverged] = 0.0;
    fit.diagnostics[diag::kBoundary] = 1.0;
  } else if (best == 0) {
    // Maximizer pinned at xi -> 0+ (unconstrained optimum has xi <= 0).
    fit.diagnostics[diag::kBoundary] = -1.0;
  }
  set_alpha(fit);
  return fit;
}

FitResult estimate_hill(const Sample& x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k >= n) {
    throw ParameterError("hill: k must satisfy 1 <= k < n (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");
  }
  const auto sorted = x.sorted();
  const double threshold = sorted[n - k - 1];
  if (!(threshold > 0.0)) {
    throw DataError("hill: threshold X_(n-k) = " + std::to_string(threshold) + " must be > 0");
  }
  double acc = 0.0;
  for (std::size_t j = 1; j <= k; ++j) acc += std::log(sorted[n - j] / threshold);
  FitResult fit;
  fit.estimator_id = EstimatorId::Hill;
  fit.xi_hat = acc / static_cast<double>(k);
  fit.mu_hat = threshold;
  set_alpha(fit);
  return fit;
}

}  // namespace gpdtail
