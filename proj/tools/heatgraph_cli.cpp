// heatgraph: generate graph-pair datasets, compute HKD/HPD processes, and run
// bootstrap bands, two-sample tests and the Monte-Carlo experiments.

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "heatgraph/errors.hpp"
#include "heatgraph/experiments.hpp"
#include "heatgraph/io.hpp"
#include "heatgraph/parallel.hpp"
#include "heatgraph/plot.hpp"

namespace {

using namespace heatgraph;
using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr std::size_t kFastBootstrap = 200;

struct Common {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool force = false;
  std::optional<double> epsilon;
};

void emit(const std::string& out, const std::string& content, bool force) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    io::write_file(out, content, force);
  }
}

void apply_epsilon(GraphModel& m, std::optional<double> epsilon) {
  if (!epsilon) return;
  if (auto* g = std::get_if<GeometricModel>(&m); g && g->inner_radius > 0.0) g->inner_radius = *epsilon;
}

PairModel load_pair_model(const std::string& path, std::optional<double> epsilon) {
  PairModel pm = io::pair_model_from_json(io::read_json(path));
  apply_epsilon(pm.first, epsilon);
  apply_epsilon(pm.second, epsilon);
  validate(pm.first, pm.weights);
  validate(pm.second, pm.weights);
  return pm;
}

ProcessKind kind_from_flag(const std::string& s) { return parse_process_kind(s); }

void add_grid_flags(CLI::App* cmd, double& t_max, std::size_t& points) {
  cmd->add_option("--t-max", t_max, "Time horizon T")->capture_default_str();
  cmd->add_option("--grid-points", points, "Number of grid points m (including 0 and T)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heat-diffusion distance processes between graphs and bootstrap inference"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Master seed")->capture_default_str();
  app.add_option("--jobs", common.jobs, "Worker threads (HEATGRAPH_JOBS overrides)")
      ->capture_default_str();
  app.add_flag("--force", common.force, "Overwrite existing output files");
  app.add_option("--epsilon", common.epsilon, "Inner radius of annulus models");

  // generate
  auto* gen = app.add_subcommand("generate", "Sample a dataset of graph pairs");
  std::string gen_model, gen_out;
  std::size_t gen_count = 100;
  gen->add_option("--model", gen_model, "Pair model JSON")->required();
  gen->add_option("-n,--count", gen_count, "Number of pairs")->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Output dataset JSON")->required();

  // compute
  auto* comp = app.add_subcommand("compute", "Evaluate the distance process of every pair");
  std::string comp_in, comp_out, comp_kind = "hkd";
  double comp_t = 1.0;
  std::size_t comp_m = 50;
  comp->add_option("dataset", comp_in, "Dataset JSON")->required();
  comp->add_option("--kind", comp_kind, "hkd or hpd")->capture_default_str();
  add_grid_flags(comp, comp_t, comp_m);
  comp->add_option("-o,--out", comp_out, "Output process CSV (stdout if omitted)");

  // band
  auto* band = app.add_subcommand("band", "Bootstrap confidence band for the mean process");
  std::string band_in, band_out, band_svg, band_csv;
  double band_alpha = 0.05;
  std::size_t band_b = 1000;
  bool band_fast = false;
  band->add_option("process", band_in, "Process CSV")->required();
  band->add_option("--alpha", band_alpha, "Level alpha")->capture_default_str();
  band->add_option("--bootstrap", band_b, "Bootstrap replicates B")->capture_default_str();
  band->add_flag("--fast", band_fast, "Use B = 200");
  band->add_option("-o,--out", band_out, "Band JSON (stdout if omitted)");
  band->add_option("--svg", band_svg, "Also write an SVG plot");
  band->add_option("--csv", band_csv, "Also write the band as CSV");

  // test
  auto* test = app.add_subcommand("test", "Two-sample test of equal mean processes");
  std::string test_a, test_b, test_out;
  double test_alpha = 0.05;
  std::size_t test_b_reps = 1000;
  bool test_fast = false;
  test->add_option("a", test_a, "Process CSV of sample A")->required();
  test->add_option("b", test_b, "Process CSV of sample B")->required();
  test->add_option("--alpha", test_alpha, "Level alpha")->capture_default_str();
  test->add_option("--bootstrap", test_b_reps, "Bootstrap replicates B")->capture_default_str();
  test->add_flag("--fast", test_fast, "Use B = 200");
  test->add_option("-o,--out", test_out, "Result JSON (stdout if omitted)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Monte-Carlo level, power, NP sweep or coverage run");
  std::string exp_which, exp_config, exp_model, exp_model_b, exp_kind, exp_out, exp_svg;
  std::optional<double> exp_alpha, exp_t;
  std::optional<std::size_t> exp_b, exp_reps, exp_m;
  std::vector<std::size_t> exp_sizes;
  bool exp_fast = false;
  exp->add_option("experiment", exp_which, "level, power, np_sweep or coverage")->required();
  exp->add_option("--config", exp_config, "Experiment config JSON");
  exp->add_option("--model", exp_model, "Pair model JSON (sample A, or the coverage sample)");
  exp->add_option("--model-b", exp_model_b, "Pair model JSON for sample B");
  exp->add_option("--kind", exp_kind, "hkd or hpd");
  exp->add_option("--alpha", exp_alpha, "Level alpha");
  exp->add_option("--bootstrap", exp_b, "Bootstrap replicates B");
  exp->add_flag("--fast", exp_fast, "Use B = 200");
  exp->add_option("--reps", exp_reps, "Repetitions per sample size");
  exp->add_option("--sizes", exp_sizes, "Sample sizes")->delimiter(',');
  exp->add_option("--t-max", exp_t, "Time horizon T");
  exp->add_option("--grid-points", exp_m, "Number of grid points");
  exp->add_option("-o,--out", exp_out, "Summary JSON (stdout if omitted)");
  exp->add_option("--svg", exp_svg, "Also write a rate-vs-size plot");

  // plot
  auto* plt = app.add_subcommand("plot", "Render band JSON or experiment summaries");
  std::vector<std::string> plot_in, plot_labels;
  std::string plot_out, plot_title;
  std::optional<double> plot_ref;
  plt->add_option("inputs", plot_in, "Band JSON, or one or more experiment summary JSON files")
      ->required();
  plt->add_option("--labels", plot_labels, "Curve labels")->delimiter(',');
  plt->add_option("--reference", plot_ref, "Horizontal reference line (e.g. alpha)");
  plt->add_option("--title", plot_title, "Plot title");
  plt->add_option("-o,--out", plot_out, "Output .svg or .csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const std::size_t jobs = resolve_jobs(common.jobs);

    if (gen->parsed()) {
      io::Dataset d;
      d.config = load_pair_model(gen_model, common.epsilon);
      d.seed = common.seed;
      d.pairs = sample_dataset(d.config, gen_count, common.seed, jobs);
      io::write_file(gen_out, io::dump(io::to_json(d)), common.force);
    } else if (comp->parsed()) {
      const auto d = io::dataset_from_json(io::read_json(comp_in));
      const auto kind = kind_from_flag(comp_kind);
      if (kind == ProcessKind::HKD)
        for (const auto& p : d.pairs)
          if (!p.same_size())
            throw ValidationError("HKD needs equal graph sizes in every pair; use --kind hpd");
      const auto grid = TimeGrid::uniform(comp_t, comp_m);
      const auto pm = compute_process(d.pairs, grid, kind, jobs);
      std::size_t n = 0;
      double w = 0.0;
      for (const auto& p : d.pairs) {
        n = std::max(n, p.max_size());
        w = std::max(w, p.max_weight());
      }
      std::cerr << "grid error bound: " << io::format_double(grid_error_bound(lipschitz_constant(n, w, kind), grid))
                << '\n';
      emit(comp_out, io::process_to_csv(pm), common.force);
    } else if (band->parsed()) {
      const auto pm = io::process_from_csv(io::read_file(band_in));
      const auto result = bootstrap_band(pm, band_alpha, band_fast ? kFastBootstrap : band_b, common.seed, jobs);
      emit(band_out, io::dump(io::to_json(result)), common.force);
      if (!band_svg.empty()) io::write_file(band_svg, plot::band_svg(result), common.force);
      if (!band_csv.empty()) io::write_file(band_csv, plot::band_csv(result), common.force);
    } else if (test->parsed()) {
      const auto a = io::process_from_csv(io::read_file(test_a));
      const auto b = io::process_from_csv(io::read_file(test_b));
      const auto result = two_sample_test(a, b, test_alpha, test_fast ? kFastBootstrap : test_b_reps,
                                          common.seed, jobs);
      emit(test_out, io::dump(io::to_json(result)), common.force);
    } else if (exp->parsed()) {
      ExperimentConfig config =
          exp_config.empty() ? ExperimentConfig{} : experiment_config_from_json(io::read_json(exp_config));
      config.experiment = parse_experiment_kind(exp_which);
      if (!exp_model.empty()) {
        auto pm = load_pair_model(exp_model, common.epsilon);
        (config.experiment == ExperimentKind::Coverage ? config.sample : config.sample_a) = pm;
      }
      if (!exp_model_b.empty()) config.sample_b = load_pair_model(exp_model_b, common.epsilon);
      for (auto* pm : {&config.sample_a, &config.sample_b, &config.sample}) {
        if (*pm) {
          apply_epsilon((*pm)->first, common.epsilon);
          apply_epsilon((*pm)->second, common.epsilon);
        }
      }
      if (!exp_kind.empty()) config.kind = kind_from_flag(exp_kind);
      if (exp_alpha) config.alpha = *exp_alpha;
      if (exp_b) config.bootstrap = *exp_b;
      if (exp_fast) config.bootstrap = kFastBootstrap;
      if (exp_reps) config.reps = *exp_reps;
      if (!exp_sizes.empty()) config.sizes = exp_sizes;
      if (exp_t) config.t_max = *exp_t;
      if (exp_m) config.grid_points = *exp_m;
      if (app.get_option("--seed")->count() > 0 || exp_config.empty()) config.seed = common.seed;

      const auto summary = to_json(run_experiment(config, jobs));
      emit(exp_out, io::dump(summary), common.force);
      if (!exp_svg.empty()) {
        const bool coverage = config.experiment == ExperimentKind::Coverage;
        const double reference =
            coverage ? 1.0 - config.alpha : (config.experiment == ExperimentKind::Level ? config.alpha : 1.0);
        io::write_file(exp_svg,
                       plot::rate_svg({plot::rate_curve_from_json(summary, std::string(to_string(config.kind)))},
                                      reference, std::string(to_string(config.experiment))),
                       common.force);
      }
    } else if (plt->parsed()) {
      const bool svg = plot_out.size() >= 4 && plot_out.substr(plot_out.size() - 4) == ".svg";
      const bool csv = plot_out.size() >= 4 && plot_out.substr(plot_out.size() - 4) == ".csv";
      if (!svg && !csv) throw ValidationError("plot output must end in .svg or .csv");
      const json first = io::read_json(plot_in.front());
      if (first.value("kind", "") == "band") {
        if (plot_in.size() != 1) throw ValidationError("a band plot takes exactly one input");
        const auto b = io::band_from_json(first);
        io::write_file(plot_out, svg ? plot::band_svg(b, plot_title) : plot::band_csv(b), common.force);
      } else {
        std::vector<plot::RateCurve> curves;
        for (std::size_t i = 0; i < plot_in.size(); ++i) {
          const std::string label = i < plot_labels.size() ? plot_labels[i] : plot_in[i];
          curves.push_back(plot::rate_curve_from_json(i == 0 ? first : io::read_json(plot_in[i]), label));
        }
        io::write_file(plot_out, svg ? plot::rate_svg(curves, plot_ref, plot_title) : plot::rate_csv(curves),
                       common.force);
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
