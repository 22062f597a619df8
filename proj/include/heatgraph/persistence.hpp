#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "heatgraph/graph.hpp"

namespace heatgraph {

struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;

  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// Multiset of finite (birth, death) points.
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;
  explicit PersistenceDiagram(std::vector<DiagramPoint> points);

  std::span<const DiagramPoint> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

  // Points in sorted order; equal multisets give equal vectors.
  std::vector<DiagramPoint> sorted() const;

 private:
  std::vector<DiagramPoint> points_;
};

enum class DiagramType { Ord0, Rel1, Ext0, Ext1 };

inline constexpr std::array<DiagramType, 4> kDiagramTypes{
    DiagramType::Ord0, DiagramType::Rel1, DiagramType::Ext0, DiagramType::Ext1};

std::string_view to_string(DiagramType type);

/// The four extended persistence diagrams of a vertex-filtered graph.
/// Every point is (level of creator, level of destroyer); ord0 and ext0
/// points have birth <= death, rel1 and ext1 points birth >= death.
struct ExtendedDiagramSet {
  PersistenceDiagram ord0;
  PersistenceDiagram rel1;
  PersistenceDiagram ext0;
  PersistenceDiagram ext1;

  const PersistenceDiagram& operator[](DiagramType type) const;
  PersistenceDiagram& operator[](DiagramType type);
};

/// Extended persistence of (G, f) by reducing the boundary matrix of the
/// coned graph over Z/2.
///
/// Filtration: cone apex first; then vertices and edges of G by ascending
/// level (vertex: f(v), edge: max of endpoints); then cone edges and cone
/// triangles by descending level (cone edge over v: f(v), cone triangle
/// over {u, v}: min(f(u), f(v))). Ties go to lower dimension, then to
/// vertex index or lexicographic edge order.
ExtendedDiagramSet extended_persistence(const WeightedGraph& g, std::span<const double> f);

/// Exact bottleneck distance under the l-infinity ground metric, a point
/// (b, d) being matchable to the diagonal at cost |d - b| / 2.
double bottleneck_distance(const PersistenceDiagram& mu, const PersistenceDiagram& nu);

/// max(floor, bottleneck_distance(mu, nu)), skipping the search when the
/// distance is already known to be at most `floor`.
double bottleneck_distance_at_least(const PersistenceDiagram& mu, const PersistenceDiagram& nu,
                                    double floor);

/// Max over the four diagram types of the per-type bottleneck distance.
double diagram_set_distance(const ExtendedDiagramSet& a, const ExtendedDiagramSet& b);

}  // namespace heatgraph
