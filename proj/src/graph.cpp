#include "heatgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "heatgraph/errors.hpp"

namespace heatgraph {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::size_t WeightedGraph::component_count() const {
  std::vector<std::size_t> parent(n_);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::size_t components = n_;
  for (const auto& e : edges_) {
    auto a = find_root(parent, e.u);
    auto b = find_root(parent, e.v);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
      --components;
    }
  }
  return components;
}

WeightedGraph build_graph(std::size_t n, std::vector<WeightedEdge> edges,
                          std::optional<WeightBounds> declared) {
  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      std::ostringstream msg;
      msg << "edge (" << e.u << ", " << e.v << ") has an endpoint outside 0.." << n;
      throw ValidationError(msg.str());
    }
    if (e.u == e.v) {
      std::ostringstream msg;
      msg << "self-loop at vertex " << e.u;
      throw ValidationError(msg.str());
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      std::ostringstream msg;
      msg << "edge (" << e.u << ", " << e.v << ") has non-positive or non-finite weight " << e.w;
      throw ValidationError(msg.str());
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      std::ostringstream msg;
      msg << "duplicate edge (" << edges[i].u << ", " << edges[i].v << ")";
      throw ValidationError(msg.str());
    }
  }

  WeightBounds bounds;
  if (declared) {
    if (!(declared->min >= 0.0) || declared->min > declared->max) {
      throw ValidationError("declared weight bounds must satisfy 0 <= w_min <= w_max");
    }
    bounds = *declared;
    for (const auto& e : edges) {
      if (e.w < bounds.min || e.w > bounds.max) {
        std::ostringstream msg;
        msg << "edge (" << e.u << ", " << e.v << ") weight " << e.w
            << " lies outside the declared range [" << bounds.min << ", " << bounds.max << "]";
        throw ValidationError(msg.str());
      }
    }
  } else if (!edges.empty()) {
    auto [lo, hi] = std::minmax_element(
        edges.begin(), edges.end(),
        [](const WeightedEdge& a, const WeightedEdge& b) { return a.w < b.w; });
    bounds = {lo->w, hi->w};
  }

  WeightedGraph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.bounds_ = bounds;
  return g;
}

Matrix laplacian(const WeightedGraph& g) {
  Matrix l(g.size(), g.size());
  for (const auto& e : g.edges()) {
    l(e.u, e.v) -= e.w;
    l(e.v, e.u) -= e.w;
    l(e.u, e.u) += e.w;
    l(e.v, e.v) += e.w;
  }
  return l;
}

}  // namespace heatgraph
