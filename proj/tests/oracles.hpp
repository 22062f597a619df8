#pragma once

// Independent reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "heatgraph/generators.hpp"
#include "heatgraph/graph.hpp"
#include "heatgraph/matrix.hpp"
#include "heatgraph/persistence.hpp"
#include "heatgraph/random.hpp"

namespace oracle {

using namespace heatgraph;

// G(n, p) with the given weight scheme; exp-decay falls back to weights in (e^-4, 1).
inline WeightedGraph random_graph(Rng& rng, std::size_t n, double p, const WeightScheme& ws = Unweighted{}) {
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!rng.bernoulli(p)) continue;
      double w = 1.0;
      if (const auto* u = std::get_if<UniformWeights>(&ws)) w = rng.uniform(u->a, u->b);
      if (const auto* e = std::get_if<ExpDecayWeights>(&ws)) w = std::exp(-e->rate * 2.0 * rng.uniform_open());
      edges.push_back({i, j, w});
    }
  return build_graph(n, std::move(edges), declared_bounds(ws));
}

inline Matrix dense_laplacian(const WeightedGraph& g) {
  const std::size_t n = g.size();
  Matrix l(n, n);
  for (const auto& e : g.edges()) {
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
    l(e.u, e.u) += e.w;
    l(e.v, e.v) += e.w;
  }
  return l;
}

// e^{-tL} by scaling and squaring a Taylor series; no eigen-decomposition involved.
inline Matrix expm_heat(const WeightedGraph& g, double t) {
  const std::size_t n = g.size();
  Matrix a = dense_laplacian(g);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  double scale = t;
  while (norm * scale > 0.25) {
    scale /= 2.0;
    ++squarings;
  }
  for (auto i = 0u; i < n; ++i)
    for (auto j = 0u; j < n; ++j) a(i, j) *= -scale;
  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = term * a;
    for (auto i = 0u; i < n; ++i)
      for (auto j = 0u; j < n; ++j) {
        term(i, j) /= k;
        result(i, j) += term(i, j);
      }
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void link(std::size_t child, std::size_t root) { parent_[find(child)] = find(root); }

 private:
  std::vector<std::size_t> parent_;
};

// 0-dimensional sublevel persistence by Kruskal with the elder rule.
// Returns the finite pairs (birth, death), zero-length ones included.
inline std::vector<DiagramPoint> sublevel_pairs(const WeightedGraph& g, const std::vector<double>& f) {
  const std::size_t n = g.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] < f[b]; });
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  UnionFind uf(n);
  std::vector<double> birth(n);
  std::vector<bool> added(n, false);
  std::vector<DiagramPoint> out;
  for (auto v : order) {
    added[v] = true;
    birth[v] = f[v];
    for (auto u : adj[v]) {
      if (!added[u]) continue;
      auto a = uf.find(u), b = uf.find(v);
      if (a == b) continue;
      if (birth[a] > birth[b]) std::swap(a, b);  // a is the elder
      out.push_back({birth[b], f[v]});
      uf.link(b, a);
    }
  }
  return out;
}

inline void drop_diagonal(std::vector<DiagramPoint>& pts) {
  std::erase_if(pts, [](const DiagramPoint& p) { return p.birth == p.death; });
}

inline PersistenceDiagram ord0(const WeightedGraph& g, const std::vector<double>& f) {
  auto pairs = sublevel_pairs(g, f);
  drop_diagonal(pairs);
  return PersistenceDiagram(std::move(pairs));
}

// Superlevel merges: run on -f and negate both coordinates.
inline PersistenceDiagram rel1(const WeightedGraph& g, const std::vector<double>& f) {
  std::vector<double> neg(f.size());
  std::transform(f.begin(), f.end(), neg.begin(), [](double x) { return -x; });
  auto pairs = sublevel_pairs(g, neg);
  for (auto& p : pairs) p = {-p.birth, -p.death};
  drop_diagonal(pairs);
  return PersistenceDiagram(std::move(pairs));
}

// One point (min, max) per connected component.
inline PersistenceDiagram ext0(const WeightedGraph& g, const std::vector<double>& f) {
  const std::size_t n = g.size();
  UnionFind uf(n);
  for (const auto& e : g.edges()) uf.link(e.u, e.v);
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = uf.find(v);
    lo[r] = std::min(lo[r], f[v]);
    hi[r] = std::max(hi[r], f[v]);
  }
  std::vector<DiagramPoint> pts;
  for (std::size_t v = 0; v < n; ++v)
    if (uf.find(v) == v) pts.push_back({lo[v], hi[v]});
  return PersistenceDiagram(std::move(pts));
}

inline double diagonal_cost(const DiagramPoint& p) { return std::abs(p.death - p.birth) / 2.0; }

inline double linf(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

// Minimum over every partial injection mu -> nu (unmatched points go to the diagonal).
inline double brute_force_bottleneck(const std::vector<DiagramPoint>& mu, const std::vector<DiagramPoint>& nu) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> used(nu.size(), false);
  auto rec = [&](auto&& self, std::size_t i, double cost) -> void {
    if (cost >= best) return;
    if (i == mu.size()) {
      for (std::size_t j = 0; j < nu.size(); ++j)
        if (!used[j]) cost = std::max(cost, diagonal_cost(nu[j]));
      best = std::min(best, cost);
      return;
    }
    self(self, i + 1, std::max(cost, diagonal_cost(mu[i])));
    for (std::size_t j = 0; j < nu.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      self(self, i + 1, std::max(cost, linf(mu[i], nu[j])));
      used[j] = false;
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

// Small diagram with coordinates from a coarse lattice (to force ties) or uniform reals.
inline std::vector<DiagramPoint> random_points(Rng& rng, std::size_t max_points, bool lattice) {
  const auto count = static_cast<std::size_t>(rng.below(max_points + 1));
  std::vector<DiagramPoint> pts;
  auto coord = [&] {
    return lattice ? 0.5 * static_cast<double>(rng.below(9)) : 4.0 * rng.uniform();
  };
  while (pts.size() < count) {
    const double b = coord(), d = coord();
    if (b != d) pts.push_back({b, d});
  }
  return pts;
}

}  // namespace oracle
