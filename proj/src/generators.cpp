#include "heatgraph/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

#include "heatgraph/errors.hpp"
#include "heatgraph/parallel.hpp"

namespace heatgraph {

namespace {

// Upper bound on the distance between two points of the unit disk.
constexpr double kDomainDiameter = 2.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

struct Point {
  double x, y;
};

Point sample_disk_point(Rng& rng) {
  const double r = std::sqrt(rng.uniform());
  const double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

double edge_weight(const WeightScheme& weights, double distance, Rng& rng) {
  return std::visit(overloaded{
                        [](const Unweighted&) { return 1.0; },
                        [&](const UniformWeights& u) { return rng.uniform(u.a, u.b); },
                        [&](const ExpDecayWeights& e) { return std::exp(-e.rate * distance); },
                    },
                    weights);
}

WeightedGraph sample_er(const ErdosRenyi& m, const WeightScheme& weights, Rng& rng) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = i + 1; j < m.n; ++j)
      if (rng.bernoulli(m.p)) edges.push_back({i, j, edge_weight(weights, 0.0, rng)});
  return build_graph(m.n, std::move(edges), declared_bounds(weights));
}

WeightedGraph sample_sbm(const StochasticBlockModel& m, const WeightScheme& weights, Rng& rng) {
  std::vector<std::size_t> block;
  for (std::size_t k = 0; k < m.block_sizes.size(); ++k) block.insert(block.end(), m.block_sizes[k], k);
  const std::size_t n = block.size();
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.bernoulli(m.probs[block[i]][block[j]]))
        edges.push_back({i, j, edge_weight(weights, 0.0, rng)});
  return build_graph(n, std::move(edges), declared_bounds(weights));
}

WeightedGraph sample_geometric(const GeometricModel& m, const WeightScheme& weights, Rng& rng) {
  std::size_t n = 0;
  if (const auto* fixed = std::get_if<FixedSize>(&m.size)) {
    n = fixed->n;
  } else {
    const double mean = std::get<PoissonSize>(m.size).mean;
    do {
      n = rng.poisson(mean);
    } while (n == 0);
  }

  std::vector<Point> points(n);
  const double inner2 = m.inner_radius * m.inner_radius;
  for (auto& p : points) {
    do {
      p = sample_disk_point(rng);
    } while (p.x * p.x + p.y * p.y < inner2);
  }

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pairs.emplace_back(std::hypot(points[i].x - points[j].x, points[i].y - points[j].y), i, j);
  const auto keep = std::min(
      pairs.size(),
      static_cast<std::size_t>(std::floor(m.edge_fraction * static_cast<double>(pairs.size()) + 1e-9)));
  std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(keep), pairs.end());

  std::vector<WeightedEdge> edges;
  edges.reserve(keep);
  for (std::size_t k = 0; k < keep; ++k) {
    const auto& [d, i, j] = pairs[k];
    edges.push_back({i, j, edge_weight(weights, d, rng)});
  }
  return build_graph(n, std::move(edges), declared_bounds(weights));
}

}  // namespace

std::size_t StochasticBlockModel::size() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

void validate(const GraphModel& model, const WeightScheme& weights) {
  std::visit(overloaded{
                 [](const Unweighted&) {},
                 [](const UniformWeights& u) {
                   if (!(u.a >= 0.0 && u.a < u.b))
                     throw ValidationError("uniform weights need 0 <= a < b");
                 },
                 [&](const ExpDecayWeights& e) {
                   if (!(e.rate > 0.0)) throw ValidationError("exp_decay rate must be positive");
                   if (!std::holds_alternative<GeometricModel>(model))
                     throw ValidationError("exp_decay weights need point positions (geometric model)");
                 },
             },
             weights);
  std::visit(overloaded{
                 [](const ErdosRenyi& m) {
                   if (m.n == 0) throw ValidationError("ER model needs n >= 1");
                   if (!is_probability(m.p)) throw ValidationError("ER probability outside [0, 1]");
                 },
                 [](const StochasticBlockModel& m) {
                   const std::size_t k = m.block_sizes.size();
                   if (k == 0) throw ValidationError("SBM needs at least one block");
                   for (auto s : m.block_sizes)
                     if (s == 0) throw ValidationError("SBM block sizes must be positive");
                   if (m.probs.size() != k) throw ValidationError("SBM probability matrix must be K x K");
                   for (std::size_t a = 0; a < k; ++a) {
                     if (m.probs[a].size() != k)
                       throw ValidationError("SBM probability matrix must be K x K");
                     for (std::size_t b = 0; b < k; ++b) {
                       if (!is_probability(m.probs[a][b]))
                         throw ValidationError("SBM probability outside [0, 1]");
                       if (m.probs[a][b] != m.probs[b][a])
                         throw ValidationError("SBM probability matrix must be symmetric");
                     }
                   }
                 },
                 [](const GeometricModel& m) {
                   if (!(m.inner_radius >= 0.0 && m.inner_radius < 1.0))
                     throw ValidationError("annulus inner radius must lie in [0, 1)");
                   if (!is_probability(m.edge_fraction))
                     throw ValidationError("geometric edge fraction outside [0, 1]");
                   if (const auto* f = std::get_if<FixedSize>(&m.size); f && f->n == 0)
                     throw ValidationError("geometric model needs n >= 1");
                   if (const auto* p = std::get_if<PoissonSize>(&m.size);
                       p && !(p->mean > 0.0 && p->mean <= 500.0))
                     throw ValidationError("Poisson size mean must lie in (0, 500]");
                 },
             },
             model);
}

std::optional<std::size_t> fixed_size(const GraphModel& model) {
  return std::visit(overloaded{
                        [](const ErdosRenyi& m) -> std::optional<std::size_t> { return m.n; },
                        [](const StochasticBlockModel& m) -> std::optional<std::size_t> {
                          return m.size();
                        },
                        [](const GeometricModel& m) -> std::optional<std::size_t> {
                          if (const auto* f = std::get_if<FixedSize>(&m.size)) return f->n;
                          return std::nullopt;
                        },
                    },
                    model);
}

void require_hkd_compatible(const PairModel& pm) {
  const auto a = fixed_size(pm.first);
  const auto b = fixed_size(pm.second);
  if (!a || !b) throw ValidationError("HKD needs fixed graph sizes; use HPD for random-size models");
  if (*a != *b) {
    std::ostringstream msg;
    msg << "HKD needs equal graph sizes, the pair model has " << *a << " and " << *b;
    throw ValidationError(msg.str());
  }
}

WeightBounds declared_bounds(const WeightScheme& weights) {
  return std::visit(overloaded{
                        [](const Unweighted&) { return WeightBounds{1.0, 1.0}; },
                        [](const UniformWeights& u) { return WeightBounds{u.a, u.b}; },
                        [](const ExpDecayWeights& e) {
                          return WeightBounds{std::exp(-e.rate * kDomainDiameter), 1.0};
                        },
                    },
                    weights);
}

WeightedGraph sample_graph(const GraphModel& model, const WeightScheme& weights, Rng& rng) {
  validate(model, weights);
  return std::visit(overloaded{
                        [&](const ErdosRenyi& m) { return sample_er(m, weights, rng); },
                        [&](const StochasticBlockModel& m) { return sample_sbm(m, weights, rng); },
                        [&](const GeometricModel& m) { return sample_geometric(m, weights, rng); },
                    },
                    model);
}

GraphPair sample_pair(const PairModel& pm, Rng& rng) {
  WeightedGraph first = sample_graph(pm.first, pm.weights, rng);
  WeightedGraph second = sample_graph(pm.second, pm.weights, rng);
  return GraphPair(std::move(first), std::move(second));
}

std::vector<GraphPair> sample_dataset(const PairModel& pm, std::size_t count, std::uint64_t seed,
                                      std::size_t jobs) {
  if (count == 0) throw ValidationError("a dataset needs at least one pair");
  validate(pm.first, pm.weights);
  validate(pm.second, pm.weights);
  auto drawn = parallel_map(jobs, count, [&](std::size_t i) {
    Rng rng(seed, {i});
    return std::optional<GraphPair>(sample_pair(pm, rng));
  });
  std::vector<GraphPair> out;
  out.reserve(count);
  for (auto& p : drawn) out.push_back(std::move(*p));
  return out;
}

std::pair<double, double> np_sweep_params(std::size_t sample_size, double c, double p) {
  if (sample_size < 2) throw ValidationError("the sweep needs a sample size of at least 2");
  const double n = static_cast<double>(sample_size);
  return {p, std::clamp(p + c * std::log(n) / std::sqrt(n), 0.0, 1.0)};
}

}  // namespace heatgraph
