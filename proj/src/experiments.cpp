#include "heatgraph/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "heatgraph/errors.hpp"
#include "heatgraph/io.hpp"
#include "heatgraph/parallel.hpp"
#include "heatgraph/random.hpp"

namespace heatgraph {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTruthStream = 0xC0FFEEULL;
constexpr std::uint64_t kSampleA = 0;
constexpr std::uint64_t kSampleB = 1;
constexpr std::uint64_t kBootstrap = 2;

PairModel er_pair(std::size_t n, double p) {
  return {ErdosRenyi{n, p}, ErdosRenyi{n, p}, Unweighted{}};
}

std::vector<PairModel> models_in_use(const ExperimentConfig& c) {
  switch (c.experiment) {
    case ExperimentKind::Level:
    case ExperimentKind::Power: {
      std::vector<PairModel> out{*c.sample_a};
      out.push_back(c.sample_b ? *c.sample_b : *c.sample_a);
      return out;
    }
    case ExperimentKind::Coverage: return {*c.sample};
    case ExperimentKind::NpSweep: return {er_pair(c.np.n, c.np.p)};
  }
  return {};
}

struct RepetitionOutcome {
  int outcome = 0;
  double statistic = 0.0;
  double threshold = 0.0;
};

}  // namespace

ProcessMatrix compute_process(const std::vector<GraphPair>& pairs, const TimeGrid& grid,
                              ProcessKind kind, std::size_t jobs) {
  if (pairs.empty()) throw ValidationError("no pairs to evaluate");
  auto rows = parallel_map(jobs, pairs.size(),
                           [&](std::size_t i) { return process_row(pairs[i], grid, kind); });
  Matrix values(rows.size(), grid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) std::ranges::copy(rows[i], values.row(i).begin());
  return ProcessMatrix(grid, std::move(values));
}

ProcessMatrix simulate_process(const PairModel& pm, std::size_t count, std::uint64_t seed,
                               const TimeGrid& grid, ProcessKind kind, std::size_t jobs) {
  if (count == 0) throw ValidationError("a sample needs at least one pair");
  if (kind == ProcessKind::HKD) require_hkd_compatible(pm);
  auto rows = parallel_map(jobs, count, [&](std::size_t i) {
    Rng rng(seed, {i});
    return process_row(sample_pair(pm, rng), grid, kind);
  });
  Matrix values(count, grid.size());
  for (std::size_t i = 0; i < count; ++i) std::ranges::copy(rows[i], values.row(i).begin());
  return ProcessMatrix(grid, std::move(values));
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Level: return "level";
    case ExperimentKind::Power: return "power";
    case ExperimentKind::NpSweep: return "np_sweep";
    case ExperimentKind::Coverage: return "coverage";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view text) {
  if (text == "level") return ExperimentKind::Level;
  if (text == "power") return ExperimentKind::Power;
  if (text == "np_sweep") return ExperimentKind::NpSweep;
  if (text == "coverage") return ExperimentKind::Coverage;
  throw ValidationError("unknown experiment '" + std::string(text) +
                        "' (expected level, power, np_sweep or coverage)");
}

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw ValidationError("experiment needs at least one sample size");
  for (auto n : sizes)
    if (n < 2) throw ValidationError("sample sizes must be at least 2");
  if (reps == 0) throw ValidationError("experiment needs at least one repetition");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (bootstrap == 0) throw ValidationError("bootstrap must be positive");
  (void)grid();
  switch (experiment) {
    case ExperimentKind::Level:
    case ExperimentKind::Power:
      if (!sample_a) throw ValidationError(std::string(to_string(experiment)) + " experiment needs 'sample_a'");
      break;
    case ExperimentKind::Coverage:
      if (!sample) throw ValidationError("coverage experiment needs 'sample'");
      if (truth_pairs == 0) throw ValidationError("coverage experiment needs truth_pairs >= 1");
      break;
    case ExperimentKind::NpSweep:
      if (np.n == 0 || !(np.p >= 0.0 && np.p <= 1.0))
        throw ValidationError("np sweep needs n >= 1 and p in [0, 1]");
      break;
  }
  for (const auto& pm : models_in_use(*this)) {
    heatgraph::validate(pm.first, pm.weights);
    heatgraph::validate(pm.second, pm.weights);
    if (kind == ProcessKind::HKD) require_hkd_compatible(pm);
  }
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig c;
  if (j.contains("experiment")) c.experiment = parse_experiment_kind(j.at("experiment").get<std::string>());
  if (j.contains("kind")) c.kind = parse_process_kind(j.at("kind").get<std::string>());
  if (j.contains("sample_a")) c.sample_a = io::pair_model_from_json(j.at("sample_a"));
  if (j.contains("sample_b")) c.sample_b = io::pair_model_from_json(j.at("sample_b"));
  if (j.contains("sample")) c.sample = io::pair_model_from_json(j.at("sample"));
  c.truth_pairs = j.value("truth_pairs", c.truth_pairs);
  if (j.contains("np")) {
    const auto& np = j.at("np");
    c.np.n = np.value("n", c.np.n);
    c.np.p = np.value("p", c.np.p);
    c.np.c = np.value("C", c.np.c);
  }
  c.sizes = j.value("sizes", c.sizes);
  c.reps = j.value("reps", c.reps);
  c.alpha = j.value("alpha", c.alpha);
  c.bootstrap = j.value("bootstrap", c.bootstrap);
  c.t_max = j.value("t_max", c.t_max);
  c.grid_points = j.value("grid_points", c.grid_points);
  c.seed = j.value("seed", c.seed);
  return c;
}

json to_json(const ExperimentConfig& c) {
  json out = {{"experiment", to_string(c.experiment)},
              {"kind", to_string(c.kind)},
              {"sizes", c.sizes},
              {"reps", c.reps},
              {"alpha", c.alpha},
              {"bootstrap", c.bootstrap},
              {"t_max", c.t_max},
              {"grid_points", c.grid_points},
              {"seed", c.seed}};
  if (c.sample_a) out["sample_a"] = io::to_json(*c.sample_a);
  if (c.sample_b) out["sample_b"] = io::to_json(*c.sample_b);
  if (c.sample) {
    out["sample"] = io::to_json(*c.sample);
    out["truth_pairs"] = c.truth_pairs;
  }
  if (c.experiment == ExperimentKind::NpSweep) out["np"] = {{"n", c.np.n}, {"p", c.np.p}, {"C", c.np.c}};
  return out;
}

double BinomialEstimate::rate() const {
  return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

std::pair<double, double> BinomialEstimate::wilson(double z) const {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = rate();
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

BinomialEstimate SizeResult::estimate() const {
  BinomialEstimate e;
  e.trials = outcomes.size();
  e.successes = static_cast<std::size_t>(std::count(outcomes.begin(), outcomes.end(), 1));
  return e;
}

ExperimentSummary run_experiment(const ExperimentConfig& config, std::size_t jobs) {
  config.validate();
  const TimeGrid grid = config.grid();

  ExperimentSummary summary;
  summary.config = config;

  {
    std::optional<std::size_t> n_max = 0;
    double w_max = 0.0;
    for (const auto& pm : models_in_use(config)) {
      for (const auto* m : {&pm.first, &pm.second}) {
        const auto n = fixed_size(*m);
        n_max = (n && n_max) ? std::optional(std::max(*n_max, *n)) : std::nullopt;
      }
      w_max = std::max(w_max, declared_bounds(pm.weights).max);
    }
    if (n_max) {
      summary.grid_error_bound = grid_error_bound(lipschitz_constant(*n_max, w_max, config.kind), grid);
    }
  }

  if (config.experiment == ExperimentKind::Coverage) {
    summary.truth_mean = mean_process(simulate_process(
        *config.sample, config.truth_pairs, derive_key(config.seed, {kTruthStream}), grid,
        config.kind, jobs));
  }

  const std::size_t sizes = config.sizes.size();
  const std::size_t tasks = sizes * config.reps;
  auto outcomes = parallel_map(jobs, tasks, [&](std::size_t task) {
    const std::size_t s = task / config.reps;
    const std::size_t r = task % config.reps;
    const std::size_t n = config.sizes[s];
    const std::uint64_t seed_a = derive_key(config.seed, {s, r, kSampleA});
    const std::uint64_t seed_b = derive_key(config.seed, {s, r, kSampleB});
    const std::uint64_t seed_boot = derive_key(config.seed, {s, r, kBootstrap});

    RepetitionOutcome out;
    if (config.experiment == ExperimentKind::Coverage) {
      const ProcessMatrix pm = simulate_process(*config.sample, n, seed_a, grid, config.kind);
      const ConfidenceBand band = bootstrap_band(pm, config.alpha, config.bootstrap, seed_boot);
      double sup = 0.0;
      for (std::size_t j = 0; j < band.mean.size(); ++j)
        sup = std::max(sup, std::abs(band.mean[j] - summary.truth_mean[j]));
      out.outcome = band.contains(summary.truth_mean) ? 1 : 0;
      out.statistic = std::sqrt(static_cast<double>(n)) * sup;
      out.threshold = band.c_hat;
      return out;
    }

    PairModel model_a, model_b;
    if (config.experiment == ExperimentKind::NpSweep) {
      const auto [p0, p1] = np_sweep_params(n, config.np.c, config.np.p);
      model_a = er_pair(config.np.n, p0);
      model_b = er_pair(config.np.n, p1);
    } else {
      model_a = *config.sample_a;
      model_b = config.sample_b ? *config.sample_b : *config.sample_a;
    }
    const ProcessMatrix a = simulate_process(model_a, n, seed_a, grid, config.kind);
    const ProcessMatrix b = simulate_process(model_b, n, seed_b, grid, config.kind);
    const TwoSampleResult test = two_sample_test(a, b, config.alpha, config.bootstrap, seed_boot);
    out.outcome = test.reject ? 1 : 0;
    out.statistic = test.statistic;
    out.threshold = test.threshold;
    return out;
  });

  for (std::size_t s = 0; s < sizes; ++s) {
    SizeResult res;
    res.size = config.sizes[s];
    if (config.experiment == ExperimentKind::NpSweep)
      res.np_probabilities = np_sweep_params(res.size, config.np.c, config.np.p);
    for (std::size_t r = 0; r < config.reps; ++r) {
      const auto& o = outcomes[s * config.reps + r];
      res.outcomes.push_back(o.outcome);
      res.statistics.push_back(o.statistic);
      res.thresholds.push_back(o.threshold);
    }
    summary.results.push_back(std::move(res));
  }
  return summary;
}

json to_json(const ExperimentSummary& s) {
  json results = json::array();
  const bool coverage = s.config.experiment == ExperimentKind::Coverage;
  for (const auto& r : s.results) {
    const auto est = r.estimate();
    const auto [lo, hi] = est.wilson();
    json item = {{"size", r.size},
                 {coverage ? "covered" : "rejections", est.successes},
                 {"reps", est.trials},
                 {"rate", est.rate()},
                 {"ci95", {lo, hi}},
                 {"outcomes", r.outcomes},
                 {"statistics", r.statistics},
                 {"thresholds", r.thresholds}};
    if (r.np_probabilities) item["p0_p1"] = {r.np_probabilities->first, r.np_probabilities->second};
    results.push_back(std::move(item));
  }
  json out = {{"config", to_json(s.config)}, {"results", std::move(results)}};
  out["grid_error_bound"] = s.grid_error_bound ? json(*s.grid_error_bound) : json(nullptr);
  if (coverage) out["truth_mean"] = s.truth_mean;
  return out;
}

}  // namespace heatgraph
