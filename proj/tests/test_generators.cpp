#include <doctest.h>

#include <cmath>

#include "heatgraph/errors.hpp"
#include "heatgraph/generators.hpp"
#include "heatgraph/io.hpp"
#include "heatgraph/random.hpp"

using namespace heatgraph;

TEST_CASE("splitmix64 reference outputs") {
  std::uint64_t state = 1234567;
  CHECK(splitmix64(state) == 6457827717110365317ULL);
  CHECK(splitmix64(state) == 3203168211198807973ULL);
  CHECK(splitmix64(state) == 9817491932198370423ULL);
  CHECK(splitmix64(state) == 4593380528125082431ULL);
  CHECK(splitmix64(state) == 16408922859458223821ULL);
}

TEST_CASE("rng streams") {
  Rng a(5), b(5), c(6);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
  CHECK(derive_key(1, {0}) != derive_key(1, {1}));
  CHECK(derive_key(1, {0, 1}) != derive_key(1, {1, 0}));
  CHECK(derive_key(1, {2}) != derive_key(2, {1}));
  CHECK(derive_key(1, {}) != derive_key(1, {0}));
}

TEST_CASE("rng distributions") {
  Rng rng(77);
  double sum = 0.0;
  std::array<int, 7> counts{};
  double poisson = 0.0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    const double o = rng.uniform_open();
    CHECK(o > 0.0);
    CHECK(o < 1.0);
    ++counts[rng.below(7)];
    if (i < 5000) poisson += static_cast<double>(rng.poisson(50.0));
  }
  CHECK(std::abs(sum / kDraws - 0.5) < 4 * std::sqrt(1.0 / 12 / kDraws));
  for (int c : counts) CHECK(std::abs(c - kDraws / 7.0) < 4 * std::sqrt(kDraws / 7.0));
  CHECK(std::abs(poisson / 5000 - 50.0) < 4 * std::sqrt(50.0 / 5000));
}

TEST_CASE("ER edge count") {
  Rng rng(401);
  double total = 0.0;
  for (int i = 0; i < 1000; ++i) total += double(sample_graph(ErdosRenyi{50, 0.5}, Unweighted{}, rng).edge_count());
  const double se = std::sqrt(1225 * 0.25 / 1000);
  CHECK(std::abs(total / 1000 - 612.5) < 3 * se);
}

TEST_CASE("SBM block densities") {
  Rng rng(403);
  double within = 0, across = 0;
  constexpr int kDraws = 200;
  for (int i = 0; i < kDraws; ++i) {
    const auto g = sample_graph(StochasticBlockModel{}, Unweighted{}, rng);
    CHECK(g.size() == 50);
    for (const auto& e : g.edges()) ((e.u < 25) == (e.v < 25) ? within : across) += 1;
  }
  const double pairs_within = 2 * 300.0 * kDraws, pairs_across = 625.0 * kDraws;
  CHECK(std::abs(within / pairs_within - 0.75) < 3 * std::sqrt(0.75 * 0.25 / pairs_within));
  CHECK(std::abs(across / pairs_across - 0.25) < 3 * std::sqrt(0.75 * 0.25 / pairs_across));
}

TEST_CASE("geometric graphs keep the closest pairs") {
  Rng rng(405);
  for (int i = 0; i < 20; ++i) {
    const auto g = sample_graph(GeometricModel{}, Unweighted{}, rng);
    CHECK(g.edge_count() == 612);
    const auto annulus = sample_graph(GeometricModel{0.5, FixedSize{30}, 0.3}, ExpDecayWeights{}, rng);
    CHECK(annulus.edge_count() == 130);
    for (const auto& e : annulus.edges()) {
      CHECK(e.w > std::exp(-4.0));
      CHECK(e.w <= 1.0);
    }
  }
  const auto random_size = sample_graph(GeometricModel{0.0, PoissonSize{3.0}, 1.0}, Unweighted{}, rng);
  CHECK(random_size.size() >= 1);
}

TEST_CASE("uniform weights lie in the declared range") {
  Rng rng(407);
  const auto g = sample_graph(ErdosRenyi{30, 0.5}, UniformWeights{}, rng);
  CHECK(g.weight_bounds() == WeightBounds{0.0, 2.0});
  for (const auto& e : g.edges()) {
    CHECK(e.w > 0.0);
    CHECK(e.w < 2.0);
  }
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(validate(ErdosRenyi{10, 1.5}, Unweighted{}), ValidationError);
  CHECK_THROWS_AS(validate(ErdosRenyi{10, 0.5}, ExpDecayWeights{}), ValidationError);
  CHECK_THROWS_AS(validate(StochasticBlockModel{{5, 5}, {{0.5, 0.1}, {0.2, 0.5}}}, Unweighted{}), ValidationError);
  CHECK_THROWS_AS(validate(StochasticBlockModel{{5, 0}, {{0.5, 0.1}, {0.1, 0.5}}}, Unweighted{}), ValidationError);
  CHECK_THROWS_AS(validate(GeometricModel{1.0}, Unweighted{}), ValidationError);
  CHECK_THROWS_AS(validate(ErdosRenyi{10, 0.5}, UniformWeights{2.0, 1.0}), ValidationError);
  CHECK_NOTHROW(validate(GeometricModel{0.5, PoissonSize{50}}, ExpDecayWeights{}));

  CHECK_NOTHROW(require_hkd_compatible({ErdosRenyi{20}, StochasticBlockModel{{10, 10}, {{1, 0}, {0, 1}}}, Unweighted{}}));
  CHECK_THROWS_AS(require_hkd_compatible({ErdosRenyi{20}, ErdosRenyi{21}, Unweighted{}}), ValidationError);
  CHECK_THROWS_AS(require_hkd_compatible({GeometricModel{}, GeometricModel{0.0, PoissonSize{}}, Unweighted{}}),
                  ValidationError);
}

TEST_CASE("datasets are reproducible and independent of workers") {
  const PairModel pm{ErdosRenyi{12, 0.4}, GeometricModel{0.5, PoissonSize{10}}, UniformWeights{}};
  const auto a = sample_dataset(pm, 20, 99, 1);
  const auto b = sample_dataset(pm, 20, 99, 3);
  const auto c = sample_dataset(pm, 20, 100, 1);
  io::Dataset da{pm, 99, a}, db{pm, 99, b}, dc{pm, 100, c};
  CHECK(io::dump(io::to_json(da)) == io::dump(io::to_json(db)));
  CHECK(io::to_json(da)["pairs"] != io::to_json(dc)["pairs"]);
  CHECK_THROWS_AS(sample_dataset(pm, 0, 1), ValidationError);
}

TEST_CASE("NP sweep parameters") {
  const auto [p0, p1] = np_sweep_params(100, 0.01, 0.5);
  CHECK(p0 == 0.5);
  CHECK(p1 == doctest::Approx(0.5 + 0.01 * std::log(100.0) / 10.0).epsilon(1e-15));
  CHECK(p1 == doctest::Approx(0.504605).epsilon(1e-6));
  CHECK(np_sweep_params(30, 0.0, 0.3) == std::pair<double, double>{0.3, 0.3});
  CHECK(np_sweep_params(4, 10.0, 0.9).second == 1.0);
  CHECK_THROWS_AS(np_sweep_params(1, 0.01, 0.5), ValidationError);
}
