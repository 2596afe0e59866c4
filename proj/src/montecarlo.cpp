#include "gpdtail/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "gpdtail/error.hpp"
#include "gpdtail/pot.hpp"
#include "gpdtail/transform.hpp"

namespace gpdtail {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Sample draw(const Source& source, std::size_t n, RngStream& rng) {
  return std::visit(
      Overloaded{
          [&](const GpdSource& s) { return sample_gpd(s.params, n, rng); },
          [&](const GpdParetoCase& s) { return sample_gpd(gpd_params(s), n, rng); },
          [&](const StudentTSource& s) { return sample_student_t(s.df, n, rng); },
          [&](const StableSource& s) { return sample_symmetric_stable(s.index, n, rng); },
      },
      source);
}

struct Slot {
  std::optional<double> estimate;
  double clamp = 0.0;
};

Slot from_fit(const FitResult& fit) {
  Slot slot;
  if (fit.converged() && std::isfinite(fit.xi_hat)) slot.estimate = fit.xi_hat;
  if (auto it = fit.diagnostics.find(diag::kClampCount); it != fit.diagnostics.end()) {
    slot.clamp = it->second;
  }
  return slot;
}

// Whole-sample protocol: mu_hat = x_(1), initial fits on the strictly positive
// excesses over x_(1), transformed fits on the original observations.
std::vector<Slot> replicate_whole_sample(const ExperimentSpec& spec,
                                         const std::vector<EstimatorId>& ids, RngStream& rng) {
  const Sample x = draw(spec.source, spec.n, rng);
  const double mu_hat = x.min();
  std::optional<Sample> excess;
  try {
    excess = excesses(x, mu_hat);
  } catch (const DataError&) {
    // every estimator below needs the excesses; leave all slots empty
  }

  std::optional<FitResult> zs;
  std::optional<FitResult> pwm;
  bool zs_failed = false;
  bool pwm_failed = false;
  auto get_initial = [&](EstimatorId base) -> const FitResult* {
    auto& slot = base == EstimatorId::ZhangStephens ? zs : pwm;
    bool& failed = base == EstimatorId::ZhangStephens ? zs_failed : pwm_failed;
    if (!slot && !failed) {
      try {
        if (!excess) throw DataError("no excesses");
        slot = base == EstimatorId::ZhangStephens ? estimate_zhang_stephens(*excess)
                                                  : estimate_pwm(*excess);
      } catch (const std::exception&) {
        failed = true;
      }
    }
    return slot ? &*slot : nullptr;
  };

  std::vector<Slot> out(ids.size());
  for (std::size_t e = 0; e < ids.size(); ++e) {
    try {
      switch (ids[e]) {
        case EstimatorId::ZhangStephens:
        case EstimatorId::PWM:
          if (const FitResult* f = get_initial(ids[e])) out[e] = from_fit(*f);
          break;
        case EstimatorId::TransformedZS:
          if (const FitResult* f = get_initial(EstimatorId::ZhangStephens)) {
            out[e] = from_fit(iterate_transform(x, *f, mu_hat, spec.rounds));
          }
          break;
        case EstimatorId::TransformedPWM:
          if (const FitResult* f = get_initial(EstimatorId::PWM)) {
            out[e] = from_fit(iterate_transform(x, *f, mu_hat, spec.rounds));
          }
          break;
        case EstimatorId::GpdMLE:
          if (excess) out[e] = from_fit(estimate_gpd_mle(*excess));
          break;
        case EstimatorId::ParetoML:
          out[e] = from_fit(estimate_pareto_ml(x));
          break;
        case EstimatorId::Hill:
          break;  // rejected by validate()
      }
    } catch (const std::exception&) {
      out[e] = Slot{};
    }
  }
  return out;
}

std::vector<Slot> replicate_pot(const ExperimentSpec& spec, const std::vector<EstimatorId>& ids,
                                RngStream& rng) {
  const Sample x = draw(spec.source, spec.n, rng);
  PotConfig cfg;
  cfg.k = *spec.k;
  cfg.estimators = ids;
  cfg.fold_absolute = spec.fold_absolute;
  std::vector<Slot> out(ids.size());
  PotResult res;
  try {
    res = pot_estimate(x, cfg);
  } catch (const std::exception&) {
    return out;
  }
  for (std::size_t e = 0; e < ids.size(); ++e) {
    if (auto it = res.fits.find(ids[e]); it != res.fits.end()) out[e] = from_fit(it->second);
  }
  return out;
}

}  // namespace

GpdParams gpd_params(const GpdParetoCase& c) { return GpdParams{c.mu, c.xi * c.mu, c.xi}; }

double true_shape(const Source& source) {
  return std::visit(Overloaded{
                        [](const GpdSource& s) { return s.params.xi; },
                        [](const GpdParetoCase& s) { return s.xi; },
                        [](const StudentTSource& s) { return 1.0 / s.df; },
                        [](const StableSource& s) { return 1.0 / s.index; },
                    },
                    source);
}

std::string source_name(const Source& source) {
  return std::visit(Overloaded{
                        [](const GpdSource&) { return std::string("gpd"); },
                        [](const GpdParetoCase&) { return std::string("gpd-pareto"); },
                        [](const StudentTSource&) { return std::string("student-t"); },
                        [](const StableSource&) { return std::string("stable"); },
                    },
                    source);
}

void ExperimentSpec::validate() const {
  std::visit(Overloaded{
                 [](const GpdSource& s) { s.params.validate(); },
                 [](const GpdParetoCase& s) { gpd_params(s).validate(); },
                 [](const StudentTSource& s) {
                   if (!(s.df > 0.0) || !std::isfinite(s.df)) throw ParameterError("df must be > 0");
                 },
                 [](const StableSource& s) {
                   if (!(s.index > 0.0 && s.index <= 2.0)) {
                     throw ParameterError("stable index must lie in (0, 2]");
                   }
                 },
             },
             source);
  if (m < 1) throw ParameterError("m must be at least 1");
  if (n < 2) throw ParameterError("n must be at least 2");
  if (k) {
    if (*k < 1 || *k >= n) throw ParameterError("k must satisfy 1 <= k < n");
  } else {
    if (std::holds_alternative<StudentTSource>(source) || std::holds_alternative<StableSource>(source)) {
      throw ParameterError("student-t and stable sources require k (peaks over threshold)");
    }
    for (EstimatorId id : estimators) {
      if (id == EstimatorId::Hill) throw ParameterError("hill requires k (peaks over threshold)");
    }
  }
  if (fold_absolute && !k) throw ParameterError("fold applies to peaks-over-threshold runs only");
}

std::vector<EstimatorId> ExperimentSpec::effective_estimators() const {
  if (!estimators.empty()) return estimators;
  if (is_pot()) {
    return {EstimatorId::ZhangStephens, EstimatorId::GpdMLE, EstimatorId::Hill,
            EstimatorId::TransformedZS};
  }
  return {EstimatorId::ZhangStephens, EstimatorId::TransformedZS, EstimatorId::PWM,
          EstimatorId::TransformedPWM};
}

std::size_t ExperimentSpec::efficiency_size() const { return k ? *k : n; }

const ReplicationSummary& ExperimentResult::summary(EstimatorId id) const {
  for (const auto& s : summaries) {
    if (s.estimator_id == id) return s;
  }
  throw ParameterError("no summary for estimator " + std::string(to_string(id)));
}

ReplicationTable simulate_replications(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  const auto ids = spec.effective_estimators();
  const std::size_t m = spec.m;
  std::vector<RngStream> streams = RngStream::sequence(spec.seed, m);
  std::vector<std::vector<Slot>> slots(m);

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, m));

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < m; r = next++) {
      try {
        slots[r] = spec.is_pot() ? replicate_pot(spec, ids, streams[r])
                                 : replicate_whole_sample(spec, ids, streams[r]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  ReplicationTable table;
  table.estimators = ids;
  table.estimates.assign(ids.size(), std::vector<std::optional<double>>(m));
  table.clamps.assign(ids.size(), std::vector<double>(m, 0.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t e = 0; e < ids.size(); ++e) {
      table.estimates[e][r] = slots[r][e].estimate;
      table.clamps[e][r] = slots[r][e].clamp;
    }
  }
  return table;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, unsigned threads) {
  const ReplicationTable table = simulate_replications(spec, threads);
  const double xi = true_shape(spec.source);
  ExperimentResult result;
  result.spec = spec;
  for (std::size_t e = 0; e < table.estimators.size(); ++e) {
    std::vector<double> ok;
    double clamp_sum = 0.0;
    for (std::size_t r = 0; r < spec.m; ++r) {
      if (table.estimates[e][r]) {
        ok.push_back(*table.estimates[e][r]);
        clamp_sum += table.clamps[e][r];
      }
    }
    ReplicationSummary s = summarize(table.estimators[e], ok, spec.m - ok.size(), xi,
                                     spec.efficiency_size());
    if (!ok.empty()) s.mean_clamp = clamp_sum / static_cast<double>(ok.size());
    result.summaries.push_back(s);
  }
  return result;
}

double mse(std::span<const double> estimates, double true_xi) {
  if (estimates.empty()) throw DataError("mse: no estimates");
  double acc = 0.0;
  for (double e : estimates) acc += (e - true_xi) * (e - true_xi);
  return acc / static_cast<double>(estimates.size());
}

double bias(std::span<const double> estimates, double true_xi) {
  if (estimates.empty()) throw DataError("bias: no estimates");
  double acc = 0.0;
  for (double e : estimates) acc += e;
  return true_xi - acc / static_cast<double>(estimates.size());
}

double relative_efficiency(double mse_value, double true_xi, std::size_t n) {
  if (n < 1) throw ParameterError("relative_efficiency: n must be >= 1");
  if (!(mse_value >= 0.0)) throw ParameterError("relative_efficiency: mse must be >= 0");
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return (1.0 + true_xi) * (1.0 + true_xi) / static_cast<double>(n) / mse_value;
}

ReplicationSummary summarize(EstimatorId id, std::span<const double> estimates, std::size_t failures,
                             double true_xi, std::size_t efficiency_n) {
  ReplicationSummary s;
  s.estimator_id = id;
  s.failures = failures;
  s.used = estimates.size();
  if (estimates.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.mean_estimate = s.mse = s.bias = s.variance = s.rel_eff = s.mc_se_mse = s.mc_se_bias = nan;
    return s;
  }
  const auto m = static_cast<double>(estimates.size());
  s.mse = mse(estimates, true_xi);
  s.bias = bias(estimates, true_xi);
  s.mean_estimate = true_xi - s.bias;
  double var = 0.0;
  double sq_mean = 0.0;
  for (double e : estimates) {
    var += (e - s.mean_estimate) * (e - s.mean_estimate);
    sq_mean += (e - true_xi) * (e - true_xi);
  }
  sq_mean /= m;
  s.variance = var / m;
  s.rel_eff = relative_efficiency(s.mse, true_xi, efficiency_n);
  if (estimates.size() > 1) {
    double sq_var = 0.0;
    for (double e : estimates) {
      const double d = (e - true_xi) * (e - true_xi) - sq_mean;
      sq_var += d * d;
    }
    s.mc_se_mse = std::sqrt(sq_var / (m - 1.0)) / std::sqrt(m);
    s.mc_se_bias = std::sqrt(var / (m - 1.0)) / std::sqrt(m);
  }
  return s;
}

}  // namespace gpdtail
