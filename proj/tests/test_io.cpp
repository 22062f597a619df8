#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "heatgraph/errors.hpp"
#include "heatgraph/experiments.hpp"
#include "heatgraph/io.hpp"
#include "heatgraph/plot.hpp"
#include "heatgraph/random.hpp"

using namespace heatgraph;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "heatgraph_test_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("doubles round-trip through their shortest representation") {
  Rng rng(501);
  for (int i = 0; i < 1000; ++i) {
    const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(30)) - 15);
    CHECK(std::stod(io::format_double(x)) == x);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(1.0) == "1");
  CHECK_THROWS_AS(io::format_double(NAN), ValidationError);
}

TEST_CASE("graph JSON") {
  const auto g = build_graph(3, {{2, 0, 0.25}, {0, 1, 1.0}});
  const auto j = io::to_json(g);
  CHECK(j.dump() == R"({"edges":[[0,1,1.0],[0,2,0.25]],"n":3})");
  CHECK(io::graph_from_json(j) == g);
  CHECK_THROWS_AS(io::graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[0,0,1]]})")), ValidationError);
  CHECK_THROWS_AS(io::graph_from_json(nlohmann::json::parse(R"({"edges":[]})")), ValidationError);
  CHECK_THROWS_AS(io::graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[0,1]]})")), ValidationError);
}

TEST_CASE("diagram JSON") {
  ExtendedDiagramSet d;
  d.ext0 = PersistenceDiagram({{0, 2}});
  d.ext1 = PersistenceDiagram({{2, 0}, {1.5, 0.5}});
  const auto j = io::to_json(d);
  CHECK(j.dump() == R"({"ext0":[[0.0,2.0]],"ext1":[[1.5,0.5],[2.0,0.0]],"ord0":[],"rel1":[]})");
  CHECK(io::to_json(io::diagrams_from_json(j)) == j);
}

TEST_CASE("model JSON") {
  const auto sbm = io::graph_model_from_json(
      nlohmann::json::parse(R"({"model":"sbm","block_sizes":[2,3],"p_in":0.7,"p_out":0.1})"));
  const auto& s = std::get<StochasticBlockModel>(sbm);
  CHECK(s.probs == std::vector<std::vector<double>>{{0.7, 0.1}, {0.1, 0.7}});

  const PairModel pm{GeometricModel{0.5, PoissonSize{50}, 0.5}, GeometricModel{}, ExpDecayWeights{}};
  const auto j = io::to_json(pm);
  CHECK(io::to_json(io::pair_model_from_json(j)) == j);
  CHECK(j["first"]["domain"] == "annulus");
  CHECK(j["second"]["domain"] == "disk");

  const auto annulus = io::graph_model_from_json(nlohmann::json::parse(R"({"model":"geometric","domain":"annulus","n":10})"));
  CHECK(std::get<GeometricModel>(annulus).inner_radius == 0.5);
  CHECK(std::holds_alternative<UniformWeights>(io::weight_scheme_from_json("uniform")));

  CHECK_THROWS_AS(io::graph_model_from_json(nlohmann::json::parse(R"({"model":"ba","n":5})")), ValidationError);
  CHECK_THROWS_AS(io::pair_model_from_json(nlohmann::json::parse(
                      R"({"first":{"model":"er","n":5,"p":0.5},"second":{"model":"er","n":5,"p":0.5},"weights":"exp_decay"})")),
                  ValidationError);
}

TEST_CASE("dataset JSON round-trip is idempotent") {
  const PairModel pm{ErdosRenyi{6, 0.5}, StochasticBlockModel{{3, 3}, {{0.9, 0.1}, {0.1, 0.9}}}, UniformWeights{}};
  const io::Dataset d{pm, 7, sample_dataset(pm, 4, 7)};
  const std::string text = io::dump(io::to_json(d));
  const auto back = io::dataset_from_json(nlohmann::json::parse(text));
  CHECK(back.pairs.size() == 4);
  CHECK(io::dump(io::to_json(back)) == text);
  for (std::size_t i = 0; i < 4; ++i) CHECK(back.pairs[i].first().edges().size() == d.pairs[i].first().edges().size());
}

TEST_CASE("process CSV") {
  Matrix values(2, 3);
  values(0, 1) = 0.1;
  values(1, 2) = 1.0 / 3.0;
  const ProcessMatrix pm(TimeGrid::uniform(1.0, 3), values);
  const std::string csv = io::process_to_csv(pm);
  CHECK(csv == "0,0.5,1\n0,0.1,0\n0,0,0.3333333333333333\n");
  const auto back = io::process_from_csv(csv);
  CHECK(back.values() == pm.values());
  CHECK(back.grid() == pm.grid());
  CHECK(io::process_to_csv(back) == csv);
  CHECK(io::process_from_csv("0,1\r\n2,3\r\n").values()(0, 1) == 3.0);
  CHECK_THROWS_AS(io::process_from_csv("0,1\n"), ValidationError);
  CHECK_THROWS_AS(io::process_from_csv("0,1\n1,2,3\n"), ValidationError);
  CHECK_THROWS_AS(io::process_from_csv("0,1\n1,x\n"), ValidationError);
  CHECK_THROWS_AS(io::process_from_csv("0,1\n1,\n"), ValidationError);
  CHECK_THROWS_AS(io::process_from_csv("1,0\n1,2\n"), ValidationError);
}

TEST_CASE("band JSON round-trip and plots") {
  Matrix values(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) values(i, j) = 0.1 * double(i) * double(j);
  const auto band = bootstrap_band(ProcessMatrix(TimeGrid::uniform(1.0, 3), values), 0.1, 50, 3);
  const auto j = io::to_json(band);
  CHECK(j["kind"] == "band");
  const auto back = io::band_from_json(j);
  CHECK(io::to_json(back) == j);

  const std::string svg = plot::band_svg(back, "mean HKD");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("mean HKD") != std::string::npos);
  CHECK(svg == plot::band_svg(band, "mean HKD"));
  CHECK(plot::band_csv(band).rfind("t,mean,lower,upper\n0,", 0) == 0);

  ConfidenceBand empty;
  CHECK_THROWS_AS(plot::band_svg(empty), ValidationError);
  CHECK_THROWS_AS(io::band_from_json(nlohmann::json::parse(R"({"kind":"test"})")), ValidationError);
}

TEST_CASE("rate plots") {
  const auto summary = nlohmann::json::parse(
      R"({"results":[{"size":20,"rate":0.1,"ci95":[0.05,0.2]},{"size":40,"rate":0.5,"ci95":[0.4,0.6]}]})");
  const auto curve = plot::rate_curve_from_json(summary, "HKD");
  CHECK(curve.sizes == std::vector<double>{20, 40});
  const auto svg = plot::rate_svg({curve}, 0.05, "power");
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("<circle") != std::string::npos);
  CHECK(svg == plot::rate_svg({curve}, 0.05, "power"));
  CHECK(plot::rate_csv({curve}) == "label,size,rate,lower,upper\nHKD,20,0.1,0.05,0.2\nHKD,40,0.5,0.4,0.6\n");
  CHECK_THROWS_AS(plot::rate_svg({}, std::nullopt), ValidationError);
  CHECK_THROWS_AS(plot::rate_curve_from_json(nlohmann::json::parse(R"({"results":[]})"), "x"), ValidationError);
}

TEST_CASE("write_file refuses to overwrite without force") {
  const auto path = scratch("overwrite.txt");
  fs::remove(path);
  io::write_file(path, "one", false);
  CHECK_THROWS_AS(io::write_file(path, "two", false), ValidationError);
  CHECK(io::read_file(path) == "one");
  io::write_file(path, "two", true);
  CHECK(io::read_file(path) == "two");
  CHECK_THROWS_AS(io::read_file(scratch("missing.json")), ValidationError);
  io::write_file(path, "{not json", true);
  CHECK_THROWS_AS(io::read_json(path), ValidationError);
}

TEST_CASE("binomial estimate") {
  BinomialEstimate e{5, 100};
  CHECK(e.rate() == 0.05);
  const auto [lo, hi] = e.wilson();
  CHECK(lo == doctest::Approx(0.02154).epsilon(1e-3));
  CHECK(hi == doctest::Approx(0.11175).epsilon(1e-3));
  const auto [lo0, hi0] = BinomialEstimate{0, 50}.wilson();
  CHECK(lo0 == 0.0);
  CHECK(hi0 > 0.0);
  CHECK(BinomialEstimate{50, 50}.wilson().second == 1.0);
}

TEST_CASE("experiment configs") {
  const auto j = nlohmann::json::parse(R"({
    "experiment": "power", "kind": "hkd",
    "sample_a": {"first": {"model": "er", "n": 8, "p": 0.5}, "second": {"model": "er", "n": 8, "p": 0.5}},
    "sample_b": {"first": {"model": "er", "n": 8, "p": 0.5},
                 "second": {"model": "sbm", "block_sizes": [4, 4], "p_in": 0.9, "p_out": 0.1}},
    "sizes": [5, 10], "reps": 3, "bootstrap": 20, "grid_points": 5, "seed": 4})");
  const auto config = experiment_config_from_json(j);
  CHECK(config.experiment == ExperimentKind::Power);
  CHECK(config.sizes == std::vector<std::size_t>{5, 10});
  CHECK(experiment_config_from_json(to_json(config)).sizes == config.sizes);
  CHECK(to_json(experiment_config_from_json(to_json(config))) == to_json(config));

  const auto a = run_experiment(config, 1);
  const auto b = run_experiment(config, 3);
  CHECK(io::dump(to_json(a)) == io::dump(to_json(b)));
  REQUIRE(a.results.size() == 2);
  CHECK(a.results[1].outcomes.size() == 3);
  CHECK(a.grid_error_bound.has_value());
  for (std::size_t r = 0; r < 3; ++r)
    CHECK(a.results[0].outcomes[r] == (a.results[0].statistics[r] > a.results[0].thresholds[r]));

  auto bad = config;
  bad.sample_b = PairModel{ErdosRenyi{8}, ErdosRenyi{9}, Unweighted{}};
  CHECK_THROWS_AS(run_experiment(bad), ValidationError);
  bad = config;
  bad.sample_a.reset();
  CHECK_THROWS_AS(run_experiment(bad), ValidationError);
  bad = config;
  bad.sizes = {1};
  CHECK_THROWS_AS(run_experiment(bad), ValidationError);
  CHECK_THROWS_AS(parse_experiment_kind("band"), ValidationError);
}

TEST_CASE("coverage and NP sweep experiments run end to end") {
  ExperimentConfig cov;
  cov.experiment = ExperimentKind::Coverage;
  cov.kind = ProcessKind::HPD;
  cov.sample = PairModel{GeometricModel{0.0, PoissonSize{6}}, GeometricModel{0.5, PoissonSize{6}}, Unweighted{}};
  cov.truth_pairs = 50;
  cov.sizes = {10};
  cov.reps = 3;
  cov.bootstrap = 30;
  cov.grid_points = 4;
  const auto s = run_experiment(cov);
  CHECK_FALSE(s.grid_error_bound.has_value());
  CHECK(s.truth_mean.size() == 4);
  CHECK(to_json(s)["grid_error_bound"].is_null());
  CHECK(to_json(s)["results"][0].contains("covered"));

  ExperimentConfig np;
  np.experiment = ExperimentKind::NpSweep;
  np.np = {6, 0.5, 0.5};
  np.sizes = {4, 9};
  np.reps = 2;
  np.bootstrap = 20;
  np.grid_points = 3;
  const auto r = run_experiment(np);
  REQUIRE(r.results[1].np_probabilities.has_value());
  CHECK(r.results[1].np_probabilities->second == doctest::Approx(0.5 + 0.5 * std::log(9.0) / 3.0));
}
