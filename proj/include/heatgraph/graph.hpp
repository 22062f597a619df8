#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "heatgraph/matrix.hpp"

namespace heatgraph {

using Vertex = std::size_t;

struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  double w = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct WeightBounds {
  double min = 1.0;
  double max = 1.0;

  friend bool operator==(const WeightBounds&, const WeightBounds&) = default;
};

/// Undirected weighted graph on vertices 0..n-1 without self-loops.
///
/// Edges are stored canonically (u < v) in lexicographic order, so two graphs
/// built from the same edge set compare equal regardless of input order.
/// The weight bounds are the range the graph is declared to live in; they
/// feed the eigenvalue and Lipschitz bounds.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t size() const { return n_; }
  std::span<const WeightedEdge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const WeightBounds& weight_bounds() const { return bounds_; }

  std::size_t component_count() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  friend WeightedGraph build_graph(std::size_t, std::vector<WeightedEdge>,
                                   std::optional<WeightBounds>);

  std::size_t n_ = 0;
  std::vector<WeightedEdge> edges_;
  WeightBounds bounds_;
};

/// Validates and canonicalizes an edge list.
///
/// Rejects self-loops, out-of-range endpoints, duplicate pairs and weights
/// that are not strictly positive (ValidationError). When `declared` is
/// absent the bounds are inferred as the min/max stored weight, or (1, 1)
/// for an edgeless graph.
WeightedGraph build_graph(std::size_t n, std::vector<WeightedEdge> edges,
                          std::optional<WeightBounds> declared = std::nullopt);

/// Combinatorial Laplacian D - W.
Matrix laplacian(const WeightedGraph& g);

}  // namespace heatgraph
