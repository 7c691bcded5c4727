#include "btlrank/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

#include "btlrank/bounds.hpp"
#include "btlrank/ensemble.hpp"
#include "btlrank/errors.hpp"
#include "btlrank/estimators.hpp"
#include "btlrank/graph.hpp"
#include "btlrank/io.hpp"
#include "btlrank/model.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {
namespace {

constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kOutcomeStream = 2;

using Clock = std::chrono::steady_clock;

int thread_count(int requested) {
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("BTLRANK_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) threads = std::min(threads, limit);
  }
  return std::max(threads, 1);
}

// Runs task(i) for i in [0, count) on a small worker pool.
void parallel_for(int count, int threads,
                  const std::function<void(int)>& task) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) task(i);
    });
  for (auto& th : pool) th.join();
}

std::string status_of(const Error& e) {
  if (dynamic_cast<const MleNonexistenceError*>(&e)) return "mle_nonexistent";
  if (dynamic_cast<const NumericalError*>(&e)) return "numerical_error";
  return "failed";
}

double l2_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (centered(a) - centered(b)).norm();
}

void set_errors(TrialRecord& rec, const Eigen::VectorXd& estimate,
                const Eigen::VectorXd& truth) {
  rec.linf_error = d_infinity(estimate, truth);
  rec.l2_error = l2_distance(estimate, truth);
}

// One trial produces one record per estimator.
using TrialFn = std::function<std::vector<TrialRecord>(
    double sweep, std::uint64_t trial_seed)>;

ExperimentResult run_trials(const ExperimentConfig& config,
                            std::vector<std::string> extra_columns,
                            const TrialFn& trial_fn) {
  if (config.trials < 1) throw ValidationError("trials must be >= 1");
  const std::vector<double> sweep =
      config.sweep.empty() ? default_sweep(config.id) : config.sweep;
  const int sweep_points = static_cast<int>(sweep.size());
  const int tasks = sweep_points * config.trials;
  std::vector<std::vector<TrialRecord>> slots(tasks);

  parallel_for(tasks, thread_count(config.threads), [&](int task) {
    const int s = task / config.trials;
    const int trial = task % config.trials;
    const std::uint64_t trial_seed = derive_seed(
        config.seed, (static_cast<std::uint64_t>(s) << 32) |
                         static_cast<std::uint64_t>(trial));
    const auto start = Clock::now();
    auto records = trial_fn(sweep[s], trial_seed);
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    for (auto& r : records) {
      r.sweep = sweep[s];
      r.trial = trial;
      r.runtime_seconds = elapsed;
    }
    slots[task] = std::move(records);
  });

  ExperimentResult result;
  result.id = config.id;
  result.extra_columns = std::move(extra_columns);
  result.include_runtime = config.include_runtime;
  for (auto& slot : slots)
    for (auto& r : slot) result.records.push_back(std::move(r));
  return result;
}

// Record with every value missing and a failure status.
TrialRecord failed_record(const std::string& estimator, const Error& e,
                          std::size_t extras) {
  TrialRecord rec;
  rec.estimator = estimator;
  rec.status = status_of(e);
  rec.extras.assign(extras, std::nullopt);
  return rec;
}

// Theta of a fit; non-converged fits keep their errors but are not "ok".
Eigen::VectorXd fitted_theta(const FitResult& result, TrialRecord& rec) {
  if (!result.converged) rec.status = "not_converged";
  return result.theta_hat.theta();
}

FitConfig auto_config() {
  FitConfig cfg;
  cfg.rho_rule = RhoRule::kAuto;
  return cfg;
}

std::string cell(const std::optional<double>& v) {
  return v ? io::format_real(*v) : "NA";
}

}  // namespace

std::optional<ExperimentId> parse_experiment_id(std::string_view name) {
  if (name == "island-additivity") return ExperimentId::kIslandAdditivity;
  if (name == "barbell-ratio") return ExperimentId::kBarbellRatio;
  if (name == "banded-compare") return ExperimentId::kBandedCompare;
  if (name == "path-L-sweep") return ExperimentId::kPathLSweep;
  return std::nullopt;
}

std::string_view experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::kIslandAdditivity: return "island-additivity";
    case ExperimentId::kBarbellRatio: return "barbell-ratio";
    case ExperimentId::kBandedCompare: return "banded-compare";
    case ExperimentId::kPathLSweep: return "path-L-sweep";
  }
  return "unknown";
}

std::vector<double> default_sweep(ExperimentId id) {
  switch (id) {
    case ExperimentId::kIslandAdditivity: return {0, 1, 2, 3};
    case ExperimentId::kBarbellRatio: return {50, 100, 200, 400};
    case ExperimentId::kBandedCompare: return {50, 100, 200};
    case ExperimentId::kPathLSweep: return {1e3, 1e4, 1e5};
  }
  return {};
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return std::nan("");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

std::vector<double> ExperimentResult::values(double sweep,
                                             std::string_view estimator,
                                             std::string_view column) const {
  std::ptrdiff_t extra = -1;
  if (column != "linf_error" && column != "l2_error") {
    const auto it =
        std::find(extra_columns.begin(), extra_columns.end(), column);
    if (it == extra_columns.end())
      throw ValidationError("unknown column '" + std::string(column) + "'");
    extra = it - extra_columns.begin();
  }
  std::vector<double> out;
  for (const auto& r : records) {
    if (r.sweep != sweep || r.estimator != estimator || r.status != "ok")
      continue;
    const std::optional<double>& v =
        extra >= 0 ? r.extras[extra]
                   : (column == "linf_error" ? r.linf_error : r.l2_error);
    if (v) out.push_back(*v);
  }
  return out;
}

double ExperimentResult::mean(double sweep, std::string_view estimator,
                              std::string_view column) const {
  const auto v = values(sweep, estimator, column);
  if (v.empty()) return std::nan("");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::string ExperimentResult::to_csv() const {
  std::ostringstream out;
  out << "kind,sweep,trial,estimator,status,linf_error,l2_error";
  for (const auto& c : extra_columns) out << ',' << c;
  if (include_runtime) out << ",runtime_s";
  out << '\n';

  for (const auto& r : records) {
    out << "trial," << io::format_real(r.sweep) << ',' << r.trial << ','
        << r.estimator << ',' << r.status << ',' << cell(r.linf_error) << ','
        << cell(r.l2_error);
    for (const auto& v : r.extras) out << ',' << cell(v);
    if (include_runtime) out << ',' << io::format_real(r.runtime_seconds);
    out << '\n';
  }

  // Summary rows per (sweep, estimator) in first-appearance order.
  std::vector<std::pair<double, std::string>> groups;
  for (const auto& r : records) {
    const std::pair<double, std::string> key{r.sweep, r.estimator};
    if (std::find(groups.begin(), groups.end(), key) == groups.end())
      groups.push_back(key);
  }
  std::vector<std::string> columns{"linf_error", "l2_error"};
  columns.insert(columns.end(), extra_columns.begin(), extra_columns.end());

  struct Stat {
    const char* kind;
    std::function<std::optional<double>(const std::vector<double>&)> fn;
  };
  const std::vector<Stat> stats{
      {"mean",
       [](const std::vector<double>& v) -> std::optional<double> {
         if (v.empty()) return std::nullopt;
         return std::accumulate(v.begin(), v.end(), 0.0) /
                static_cast<double>(v.size());
       }},
      {"sd",
       [](const std::vector<double>& v) -> std::optional<double> {
         if (v.empty()) return std::nullopt;
         if (v.size() == 1) return 0.0;
         const double m = std::accumulate(v.begin(), v.end(), 0.0) /
                          static_cast<double>(v.size());
         double ss = 0.0;
         for (double x : v) ss += (x - m) * (x - m);
         return std::sqrt(ss / static_cast<double>(v.size() - 1));
       }},
      {"q05",
       [](const std::vector<double>& v) -> std::optional<double> {
         if (v.empty()) return std::nullopt;
         return quantile(v, 0.05);
       }},
      {"q50",
       [](const std::vector<double>& v) -> std::optional<double> {
         if (v.empty()) return std::nullopt;
         return quantile(v, 0.5);
       }},
      {"q95",
       [](const std::vector<double>& v) -> std::optional<double> {
         if (v.empty()) return std::nullopt;
         return quantile(v, 0.95);
       }},
  };

  for (const auto& [sweep, estimator] : groups) {
    std::size_t ok = 0;
    for (const auto& r : records)
      if (r.sweep == sweep && r.estimator == estimator && r.status == "ok") ++ok;
    std::vector<std::vector<double>> column_values;
    for (const auto& c : columns) column_values.push_back(values(sweep, estimator, c));
    for (const auto& stat : stats) {
      out << stat.kind << ',' << io::format_real(sweep) << ',' << ok << ','
          << estimator << ",summary";
      for (const auto& v : column_values) out << ',' << cell(stat.fn(v));
      if (include_runtime) out << ",NA";
      out << '\n';
    }
  }
  return out.str();
}

ExperimentResult run_island_additivity(const ExperimentConfig& config) {
  const IslandParams params{config.islands, config.n_island, config.n_overlap};
  const ComparisonGraph graph = topology::island(params);
  const double kappa = config.kappa.value_or(2.2);
  const std::int64_t L = config.L;

  return run_trials(config, {"kappa_E"}, [&](double shift, std::uint64_t seed) {
    const BtlParameters truth = shifted_island_theta(params, kappa, shift);
    const double gap = kappa_E(truth.theta(), graph);
    std::vector<TrialRecord> out;
    const ComparisonData data = simulate(graph, truth.theta(), L,
                                         derive_seed(seed, kOutcomeStream));

    TrialRecord joint;
    joint.estimator = "joint";
    joint.extras = {gap};
    try {
      set_errors(joint, fitted_theta(fit(data, auto_config()), joint),
                 truth.theta());
    } catch (const Error& e) {
      joint = failed_record("joint", e, 1);
    }
    out.push_back(std::move(joint));

    TrialRecord add;
    add.estimator = "add";
    add.extras = {gap};
    try {
      std::vector<SubgraphFit> local;
      for (int k = 0; k < params.islands; ++k) {
        const std::vector<int> block = params.block(k);
        const FitResult f = fit(data.induced(block), auto_config());
        local.emplace_back(block, fitted_theta(f, add), L);
      }
      set_errors(add, add_mle_island_chain(local, params).theta(),
                 truth.theta());
    } catch (const Error& e) {
      add = failed_record("add", e, 1);
    }
    out.push_back(std::move(add));
    return out;
  });
}

ExperimentResult run_barbell_ratio(const ExperimentConfig& config) {
  const double kappa = config.kappa.value_or(2.2);
  const std::int64_t L = config.L;
  std::vector<std::string> columns{"lambda2", "min_common_neighbors",
                                   "kappa_E",  "thm1_linf",
                                   "yan_linf", "ratio"};
  return run_trials(config, columns, [&](double size, std::uint64_t seed) {
    TrialRecord rec;
    rec.estimator = "joint";
    try {
      const int ns = static_cast<int>(std::lround(size));
      if (ns < 2) throw ValidationError("barbell clique size must be >= 2");
      const double p = std::min(1.0, 3.0 * std::log(ns) / ns);
      const ComparisonGraph g = topology::barbell(
          ns, ns, BridgeDensity{p}, derive_seed(seed, kGraphStream));
      const BtlParameters truth = linear_theta(2 * ns, kappa);
      BoundInputs in;
      in.spectral = spectral_summary(g);
      in.L = L;
      in.kappa = kappa;
      in.kappa_E = kappa_E(truth.theta(), g);
      const double thm1 = linf_upper_thm1(in);
      const std::optional<double> yan = yan_linf_bound(in);
      std::optional<double> ratio;
      if (yan) ratio = thm1 / *yan;
      rec.extras = {in.spectral.lambda2,
                    static_cast<double>(in.spectral.min_common_neighbors),
                    in.kappa_E, thm1, yan, ratio};
      if (config.fit_barbell) {
        const ComparisonData data = simulate(g, truth.theta(), L,
                                             derive_seed(seed, kOutcomeStream));
        set_errors(rec, fitted_theta(fit(data, auto_config()), rec),
                   truth.theta());
      }
    } catch (const Error& e) {
      rec = failed_record("joint", e, 6);
    }
    return std::vector<TrialRecord>{rec};
  });
}

ExperimentResult run_banded_compare(const ExperimentConfig& config) {
  const std::int64_t L = config.L;
  std::vector<std::string> columns{"k",       "kappa",          "kappa_E",
                                   "l2_bound_kappa_E", "l2_bound_kappa",
                                   "shah_l2sq"};
  return run_trials(config, columns, [&](double size, std::uint64_t seed) {
    TrialRecord rec;
    rec.estimator = "regularized";
    try {
      const int n = static_cast<int>(std::lround(size));
      if (n < 3) throw ValidationError("banded graph needs n >= 3");
      const double raw = config.band_rule == BandRule::kSqrt
                             ? std::sqrt(static_cast<double>(n))
                             : n / std::log(static_cast<double>(n));
      const int k = std::clamp(static_cast<int>(std::ceil(raw)), 1, n - 1);
      const double kappa = config.kappa.value_or(std::log(static_cast<double>(n)));
      const ComparisonGraph g = topology::banded(n, k);
      const BtlParameters truth = linear_theta(n, kappa);
      BoundInputs in;
      in.spectral = spectral_summary(g);
      in.L = L;
      in.kappa = kappa;
      in.kappa_E = kappa_E(truth.theta(), g);
      BoundInputs with_kappa = in;
      with_kappa.kappa_E = kappa;
      rec.extras = {static_cast<double>(k), kappa, in.kappa_E,
                    l2_upper_thm1(in), l2_upper_thm1(with_kappa),
                    shah_l2_bound(in)};
      const ComparisonData data = simulate(g, truth.theta(), L,
                                           derive_seed(seed, kOutcomeStream));
      set_errors(rec, fitted_theta(fit(data, auto_config()), rec),
                 truth.theta());
    } catch (const Error& e) {
      rec = failed_record("regularized", e, 6);
    }
    return std::vector<TrialRecord>{rec};
  });
}

ExperimentResult run_path_L_sweep(const ExperimentConfig& config) {
  const double kappa = config.kappa.value_or(6.9);
  const int n = config.n;
  const ComparisonGraph g = topology::path(n);
  const BtlParameters truth = linear_theta(n, kappa);
  return run_trials(config, {"tree_linf_bound"},
                    [&](double comparisons, std::uint64_t seed) {
    TrialRecord rec;
    rec.estimator = "closed_form";
    try {
      const auto L = static_cast<std::int64_t>(std::llround(comparisons));
      if (L < 1) throw ValidationError("L must be >= 1");
      rec.extras = {tree_upper_bounds(g, L, truth.theta()).linf};
      const ComparisonData data = simulate(g, truth.theta(), L,
                                           derive_seed(seed, kOutcomeStream));
      set_errors(rec, fit_tree_closed_form(data).theta_hat.theta(),
                 truth.theta());
    } catch (const Error& e) {
      rec = failed_record("closed_form", e, 1);
    }
    return std::vector<TrialRecord>{rec};
  });
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.id) {
    case ExperimentId::kIslandAdditivity: return run_island_additivity(config);
    case ExperimentId::kBarbellRatio: return run_barbell_ratio(config);
    case ExperimentId::kBandedCompare: return run_banded_compare(config);
    case ExperimentId::kPathLSweep: return run_path_L_sweep(config);
  }
  throw ValidationError("unknown experiment");
}

}  // namespace btlrank
