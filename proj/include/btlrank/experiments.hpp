#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace btlrank {

enum class ExperimentId {
  // Joint MLE vs island-chain add-MLE on an island graph, sweeping the
  // per-island shift s.
  kIslandAdditivity,
  // Ratio of the algebraic-connectivity l_inf bound to the common-neighbor
  // bound on barbells with p = 3 ln(n_s)/n_s bridges, sweeping n_s.
  kBarbellRatio,
  // Realized l2 error vs l2 bounds using kappa_E, kappa, and the
  // constrained-MLE bound on banded graphs, sweeping n.
  kBandedCompare,
  // Closed-form path MLE error quantiles, sweeping L.
  kPathLSweep,
};

std::optional<ExperimentId> parse_experiment_id(std::string_view name);
std::string_view experiment_name(ExperimentId id);

enum class BandRule { kSqrt, kNOverLog };

struct ExperimentConfig {
  ExperimentId id = ExperimentId::kIslandAdditivity;
  int trials = 20;
  std::uint64_t seed = 0;
  // Empty selects default_sweep(id).
  std::vector<double> sweep;
  // Per-experiment default when unset: 2.2 (island, barbell), ln n (banded),
  // 6.9 (path).
  std::optional<double> kappa;
  // Comparisons per edge; swept for path-L-sweep.
  std::int64_t L = 10;
  // island-additivity layout.
  int islands = 3;
  int n_island = 50;
  int n_overlap = 5;
  // path-L-sweep item count.
  int n = 50;
  BandRule band_rule = BandRule::kSqrt;
  // barbell-ratio: also fit the joint MLE and record its error.
  bool fit_barbell = true;
  // Adds a wall-clock runtime column, which makes output non-reproducible.
  bool include_runtime = false;
  // 0 selects the hardware concurrency. BTLRANK_THREADS caps either.
  int threads = 0;
};

std::vector<double> default_sweep(ExperimentId id);

// One row per (sweep value, trial, estimator).
struct TrialRecord {
  double sweep = 0.0;
  int trial = 0;
  std::string estimator;
  // "ok", "not_converged", "mle_nonexistent", "numerical_error" or "failed".
  std::string status = "ok";
  std::optional<double> linf_error;
  std::optional<double> l2_error;
  // Values for ExperimentResult::extra_columns, in order.
  std::vector<std::optional<double>> extras;
  double runtime_seconds = 0.0;
};

struct ExperimentResult {
  ExperimentId id = ExperimentId::kIslandAdditivity;
  std::vector<std::string> extra_columns;
  std::vector<TrialRecord> records;
  bool include_runtime = false;

  // Values of `column` ("linf_error", "l2_error" or an extra column) over the
  // ok trials at one sweep point, in trial order. Missing values are skipped.
  std::vector<double> values(double sweep, std::string_view estimator,
                             std::string_view column) const;
  double mean(double sweep, std::string_view estimator,
              std::string_view column) const;

  // Header, then trial rows, then per (sweep, estimator) summary rows with
  // kind mean, sd, q05, q50 and q95 over ok trials.
  std::string to_csv() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

ExperimentResult run_island_additivity(const ExperimentConfig& config);
ExperimentResult run_barbell_ratio(const ExperimentConfig& config);
ExperimentResult run_banded_compare(const ExperimentConfig& config);
ExperimentResult run_path_L_sweep(const ExperimentConfig& config);

// Linear-interpolation quantile of a sample (sorted internally).
double quantile(std::vector<double> values, double q);

}  // namespace btlrank
