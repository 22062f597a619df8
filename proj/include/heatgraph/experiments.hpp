#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "heatgraph/generators.hpp"
#include "heatgraph/heat_distances.hpp"
#include "heatgraph/stats.hpp"

namespace heatgraph {

/// Process matrix of N fresh pairs; pair i uses derive_key(seed, {i}) exactly
/// as sample_dataset does, so it equals computing a generated dataset.
ProcessMatrix simulate_process(const PairModel& pm, std::size_t count, std::uint64_t seed,
                               const TimeGrid& grid, ProcessKind kind, std::size_t jobs = 1);

/// Process matrix of an existing list of pairs.
ProcessMatrix compute_process(const std::vector<GraphPair>& pairs, const TimeGrid& grid,
                              ProcessKind kind, std::size_t jobs = 1);

enum class ExperimentKind { Level, Power, NpSweep, Coverage };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct NpSweepSettings {
  std::size_t n = 20;
  double p = 0.5;
  double c = 0.01;
};

/// Everything that determines an experiment's output.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::Level;
  ProcessKind kind = ProcessKind::HKD;
  // Level / power: pairs of sample A and sample B (B defaults to A).
  std::optional<PairModel> sample_a;
  std::optional<PairModel> sample_b;
  // Coverage: the pair model and the size of the ground-truth sample.
  std::optional<PairModel> sample;
  std::size_t truth_pairs = 10000;
  // NP sweep.
  NpSweepSettings np;

  std::vector<std::size_t> sizes{50};
  std::size_t reps = 100;
  double alpha = 0.05;
  std::size_t bootstrap = 1000;
  double t_max = 1.0;
  std::size_t grid_points = 50;
  std::uint64_t seed = 0;

  TimeGrid grid() const { return TimeGrid::uniform(t_max, grid_points); }
  /// Throws ValidationError when the configuration is incomplete or asks
  /// for HKD on models without equal fixed sizes.
  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& c);

struct BinomialEstimate {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double rate() const;
  /// Wilson score interval at the given normal quantile (1.96 for 95%).
  std::pair<double, double> wilson(double z = 1.959963984540054) const;
};

struct SizeResult {
  std::size_t size = 0;
  std::vector<int> outcomes;  // rejection (or coverage) indicator per repetition
  std::vector<double> statistics;
  std::vector<double> thresholds;
  std::optional<std::pair<double, double>> np_probabilities;
  BinomialEstimate estimate() const;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<SizeResult> results;
  std::optional<double> grid_error_bound;
  std::vector<double> truth_mean;  // coverage only
};

/// Runs every repetition for every sample size. Repetition r at size index s
/// draws from streams derived from (seed, s, r), so the summary does not
/// depend on `jobs`.
ExperimentSummary run_experiment(const ExperimentConfig& config, std::size_t jobs = 1);

nlohmann::json to_json(const ExperimentSummary& s);

}  // namespace heatgraph
