#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "heatgraph/graph.hpp"
#include "heatgraph/heat_distances.hpp"
#include "heatgraph/random.hpp"

namespace heatgraph {

struct ErdosRenyi {
  std::size_t n = 50;
  double p = 0.5;
};

struct StochasticBlockModel {
  std::vector<std::size_t> block_sizes{25, 25};
  std::vector<std::vector<double>> probs{{0.75, 0.25}, {0.25, 0.75}};

  std::size_t size() const;
};

struct FixedSize {
  std::size_t n = 50;
};
struct PoissonSize {
  double mean = 50.0;
};

/// Points uniform on the unit disk (inner_radius == 0) or on the annulus
/// inner_radius <= r <= 1; the floor(p * C(n, 2)) closest pairs become edges.
struct GeometricModel {
  double inner_radius = 0.0;
  std::variant<FixedSize, PoissonSize> size = FixedSize{};
  double edge_fraction = 0.5;
};

using GraphModel = std::variant<ErdosRenyi, StochasticBlockModel, GeometricModel>;

struct Unweighted {};
struct UniformWeights {
  double a = 0.0;
  double b = 2.0;
};
/// Weight e^{-rate d} with d the distance between the endpoints; geometric models only.
struct ExpDecayWeights {
  double rate = 2.0;
};

using WeightScheme = std::variant<Unweighted, UniformWeights, ExpDecayWeights>;

struct PairModel {
  GraphModel first;
  GraphModel second;
  WeightScheme weights;
};

/// Throws ValidationError for out-of-range parameters or an exp-decay
/// scheme on a non-geometric model.
void validate(const GraphModel& model, const WeightScheme& weights);

/// Vertex count when it is fixed by the model.
std::optional<std::size_t> fixed_size(const GraphModel& model);

/// Checks that both marginals have the same fixed size, as HKD requires.
void require_hkd_compatible(const PairModel& pm);

/// Weight range every sampled graph is declared to live in.
WeightBounds declared_bounds(const WeightScheme& weights);

WeightedGraph sample_graph(const GraphModel& model, const WeightScheme& weights, Rng& rng);

/// Two independent draws, first then second, from the same stream.
GraphPair sample_pair(const PairModel& pm, Rng& rng);

/// N i.i.d. pairs; pair i is drawn from the stream derive_key(seed, {i}).
std::vector<GraphPair> sample_dataset(const PairModel& pm, std::size_t count, std::uint64_t seed,
                                      std::size_t jobs = 1);

/// Sample-size-dependent ER edge probabilities (p, p + C log(N) / sqrt(N)),
/// natural log, clamped to [0, 1].
std::pair<double, double> np_sweep_params(std::size_t sample_size, double c, double p);

}  // namespace heatgraph
