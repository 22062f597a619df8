#include "heatgraph/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "heatgraph/errors.hpp"

namespace heatgraph {

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> points) {
  for (const auto& p : points) {
    if (!std::isfinite(p.birth) || !std::isfinite(p.death)) {
      throw ValidationError("persistence diagram points must be finite");
    }
  }
  points_ = std::move(points);
}

std::vector<DiagramPoint> PersistenceDiagram::sorted() const {
  std::vector<DiagramPoint> out = points_;
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view to_string(DiagramType type) {
  switch (type) {
    case DiagramType::Ord0: return "ord0";
    case DiagramType::Rel1: return "rel1";
    case DiagramType::Ext0: return "ext0";
    case DiagramType::Ext1: return "ext1";
  }
  return "?";
}

const PersistenceDiagram& ExtendedDiagramSet::operator[](DiagramType type) const {
  switch (type) {
    case DiagramType::Ord0: return ord0;
    case DiagramType::Rel1: return rel1;
    case DiagramType::Ext0: return ext0;
    case DiagramType::Ext1: return ext1;
  }
  return ord0;
}

PersistenceDiagram& ExtendedDiagramSet::operator[](DiagramType type) {
  return const_cast<PersistenceDiagram&>(std::as_const(*this)[type]);
}

// ---------------------------------------------------------------------------
// Extended persistence
// ---------------------------------------------------------------------------

namespace {

enum class SimplexKind : std::uint8_t { Apex, Vertex, Edge, ConeEdge, ConeTriangle };

struct Simplex {
  SimplexKind kind;
  std::uint32_t id;  // vertex index for Vertex/ConeEdge, edge index for Edge/ConeTriangle
  double level;
};

int dimension(SimplexKind k) {
  switch (k) {
    case SimplexKind::Apex:
    case SimplexKind::Vertex: return 0;
    case SimplexKind::Edge:
    case SimplexKind::ConeEdge: return 1;
    case SimplexKind::ConeTriangle: return 2;
  }
  return 0;
}

using Column = std::vector<std::uint32_t>;

// target ^= source over Z/2; both sorted ascending.
void add_column(Column& target, const Column& source, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), source.begin(), source.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

ExtendedDiagramSet extended_persistence(const WeightedGraph& g, std::span<const double> f) {
  const std::size_t n = g.size();
  if (f.size() != n) {
    std::ostringstream msg;
    msg << "vertex function has " << f.size() << " values for a graph with " << n << " vertices";
    throw ValidationError(msg.str());
  }
  const auto edges = g.edges();
  const std::size_t m = edges.size();

  std::vector<Simplex> ascending;
  ascending.reserve(n + m);
  for (std::uint32_t v = 0; v < n; ++v) ascending.push_back({SimplexKind::Vertex, v, f[v]});
  for (std::uint32_t e = 0; e < m; ++e)
    ascending.push_back({SimplexKind::Edge, e, std::max(f[edges[e].u], f[edges[e].v])});

  std::vector<Simplex> descending;
  descending.reserve(n + m);
  for (std::uint32_t v = 0; v < n; ++v) descending.push_back({SimplexKind::ConeEdge, v, f[v]});
  for (std::uint32_t e = 0; e < m; ++e)
    descending.push_back({SimplexKind::ConeTriangle, e, std::min(f[edges[e].u], f[edges[e].v])});

  auto tie_break = [](const Simplex& a, const Simplex& b) {
    const int da = dimension(a.kind), db = dimension(b.kind);
    if (da != db) return da < db;
    return a.id < b.id;
  };
  std::sort(ascending.begin(), ascending.end(), [&](const Simplex& a, const Simplex& b) {
    if (a.level != b.level) return a.level < b.level;
    return tie_break(a, b);
  });
  std::sort(descending.begin(), descending.end(), [&](const Simplex& a, const Simplex& b) {
    if (a.level != b.level) return a.level > b.level;
    return tie_break(a, b);
  });

  std::vector<Simplex> order;
  order.reserve(1 + 2 * (n + m));
  order.push_back({SimplexKind::Apex, 0, 0.0});
  order.insert(order.end(), ascending.begin(), ascending.end());
  order.insert(order.end(), descending.begin(), descending.end());

  std::vector<std::uint32_t> pos_vertex(n), pos_edge(m), pos_cone(n);
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    const auto& s = order[i];
    switch (s.kind) {
      case SimplexKind::Vertex: pos_vertex[s.id] = i; break;
      case SimplexKind::Edge: pos_edge[s.id] = i; break;
      case SimplexKind::ConeEdge: pos_cone[s.id] = i; break;
      default: break;
    }
  }

  std::vector<Column> columns(order.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    const auto& s = order[i];
    Column& col = columns[i];
    switch (s.kind) {
      case SimplexKind::Apex:
      case SimplexKind::Vertex: break;
      case SimplexKind::Edge:
        col = {pos_vertex[edges[s.id].u], pos_vertex[edges[s.id].v]};
        break;
      case SimplexKind::ConeEdge: col = {0, pos_vertex[s.id]}; break;
      case SimplexKind::ConeTriangle:
        col = {pos_edge[s.id], pos_cone[edges[s.id].u], pos_cone[edges[s.id].v]};
        break;
    }
    std::sort(col.begin(), col.end());
  }

  // Column reduction, triangles before edges. A simplex that is the pivot of
  // a reduced triangle column is a creator, so its own column is known to
  // reduce to zero and is skipped.
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> pivot_owner(order.size(), kNone);
  std::vector<bool> cleared(order.size(), false);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n + m);
  Column scratch;

  for (int dim : {2, 1}) {
    for (std::uint32_t j = 0; j < order.size(); ++j) {
      if (dimension(order[j].kind) != dim || cleared[j]) continue;
      Column& col = columns[j];
      while (!col.empty() && pivot_owner[col.back()] != kNone) {
        add_column(col, columns[pivot_owner[col.back()]], scratch);
      }
      if (!col.empty()) {
        pivot_owner[col.back()] = j;
        cleared[col.back()] = true;
        pairs.emplace_back(col.back(), j);
      }
    }
  }

  std::vector<DiagramPoint> ord0, rel1, ext0, ext1;
  for (auto [creator, destroyer] : pairs) {
    const Simplex& c = order[creator];
    const Simplex& d = order[destroyer];
    const DiagramPoint p{c.level, d.level};
    if (c.kind == SimplexKind::Vertex && d.kind == SimplexKind::Edge) {
      ord0.push_back(p);
    } else if (c.kind == SimplexKind::Vertex && d.kind == SimplexKind::ConeEdge) {
      ext0.push_back(p);
    } else if (c.kind == SimplexKind::Edge && d.kind == SimplexKind::ConeTriangle) {
      ext1.push_back(p);
    } else if (c.kind == SimplexKind::ConeEdge && d.kind == SimplexKind::ConeTriangle) {
      rel1.push_back(p);
    } else {
      throw NumericalError("unexpected persistence pair in cone filtration");
    }
  }

  // Zero-persistence ordinary and relative pairs are dropped. Essential
  // classes are kept even on the diagonal, one per component and per
  // independent cycle.
  const auto on_diagonal = [](const DiagramPoint& p) { return p.birth == p.death; };
  std::erase_if(ord0, on_diagonal);
  std::erase_if(rel1, on_diagonal);

  ExtendedDiagramSet out;
  out.ord0 = PersistenceDiagram(std::move(ord0));
  out.rel1 = PersistenceDiagram(std::move(rel1));
  out.ext0 = PersistenceDiagram(std::move(ext0));
  out.ext1 = PersistenceDiagram(std::move(ext1));
  return out;
}

// ---------------------------------------------------------------------------
// Bottleneck distance
// ---------------------------------------------------------------------------

namespace {

constexpr double kCandidateMergeTol = 1e-12;

double linf(const DiagramPoint& p, const DiagramPoint& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

double diagonal_cost(const DiagramPoint& p) { return std::abs(p.death - p.birth) / 2.0; }

// Hopcroft-Karp on an explicit adjacency list; returns the matching size.
class BipartiteMatcher {
 public:
  std::size_t max_matching(const std::vector<std::vector<std::uint32_t>>& adj,
                           std::size_t right_size) {
    const std::size_t left_size = adj.size();
    match_left_.assign(left_size, kFree);
    match_right_.assign(right_size, kFree);
    dist_.assign(left_size, 0);
    std::size_t matched = 0;

    // Greedy warm start.
    for (std::uint32_t u = 0; u < left_size; ++u) {
      for (std::uint32_t v : adj[u]) {
        if (match_right_[v] == kFree) {
          match_left_[u] = v;
          match_right_[v] = u;
          ++matched;
          break;
        }
      }
    }

    while (bfs(adj)) {
      for (std::uint32_t u = 0; u < left_size; ++u) {
        if (match_left_[u] == kFree && dfs(adj, u)) ++matched;
      }
    }
    return matched;
  }

 private:
  static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

  bool bfs(const std::vector<std::vector<std::uint32_t>>& adj) {
    queue_.clear();
    for (std::uint32_t u = 0; u < adj.size(); ++u) {
      if (match_left_[u] == kFree) {
        dist_[u] = 0;
        queue_.push_back(u);
      } else {
        dist_[u] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const std::uint32_t u = queue_[head];
      for (std::uint32_t v : adj[u]) {
        const std::uint32_t w = match_right_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          queue_.push_back(w);
        }
      }
    }
    return found;
  }

  bool dfs(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t u) {
    for (std::uint32_t v : adj[u]) {
      const std::uint32_t w = match_right_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(adj, w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::uint32_t> match_left_, match_right_, dist_, queue_;
};

class BottleneckSolver {
 public:
  BottleneckSolver(std::span<const DiagramPoint> mu, std::span<const DiagramPoint> nu)
      : mu_(mu), nu_(nu) {}

  // A diagonal-augmented bijection with every cost <= c exists iff the
  // points whose diagonal cost exceeds c can all be matched to points of the
  // other diagram within c. Those "expensive" points lie on both sides; by
  // the Mendelsohn-Dulmage theorem a matching saturating both sets exists
  // iff one saturating each side separately does.
  bool feasible(double c) {
    return saturates(mu_, nu_, c) && saturates(nu_, mu_, c);
  }

  double solve(double floor) {
    if (mu_.empty() && nu_.empty()) return floor;

    double upper = 0.0;
    for (const auto& p : mu_) upper = std::max(upper, diagonal_cost(p));
    for (const auto& q : nu_) upper = std::max(upper, diagonal_cost(q));
    if (floor >= upper) return floor;
    if (floor > 0.0 && feasible(floor)) return floor;

    // Every point must go somewhere: a lower bound on the optimum.
    double lower = floor;
    auto nearest = [](const DiagramPoint& p, std::span<const DiagramPoint> other) {
      double best = diagonal_cost(p);
      for (const auto& q : other) best = std::min(best, linf(p, q));
      return best;
    };
    for (const auto& p : mu_) lower = std::max(lower, nearest(p, nu_));
    for (const auto& q : nu_) lower = std::max(lower, nearest(q, mu_));

    std::vector<double> candidates;
    auto consider = [&](double c) {
      if (c >= lower && c <= upper) candidates.push_back(c);
    };
    for (const auto& p : mu_) consider(diagonal_cost(p));
    for (const auto& q : nu_) consider(diagonal_cost(q));
    for (const auto& p : mu_)
      for (const auto& q : nu_) consider(linf(p, q));
    std::sort(candidates.begin(), candidates.end());

    // Merge runs of near-equal candidates into their largest member, so a
    // feasible representative is never smaller than a merged true value.
    std::vector<double> unique;
    unique.reserve(candidates.size());
    for (double c : candidates) {
      if (!unique.empty() && c - unique.back() <= kCandidateMergeTol) {
        unique.back() = c;
      } else {
        unique.push_back(c);
      }
    }

    // The largest candidate is `upper`, which is always feasible.
    std::size_t lo = 0, hi = unique.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      if (feasible(unique[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return std::max(floor, unique[lo]);
  }

 private:
  bool saturates(std::span<const DiagramPoint> from, std::span<const DiagramPoint> to,
                 double c) {
    adjacency_.clear();
    for (const auto& p : from) {
      if (diagonal_cost(p) <= c) continue;
      auto& row = adjacency_.emplace_back();
      for (std::uint32_t j = 0; j < to.size(); ++j) {
        if (linf(p, to[j]) <= c) row.push_back(j);
      }
      if (row.empty()) return false;
    }
    if (adjacency_.size() > to.size()) return false;
    return matcher_.max_matching(adjacency_, to.size()) == adjacency_.size();
  }

  std::span<const DiagramPoint> mu_, nu_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  BipartiteMatcher matcher_;
};

}  // namespace

double bottleneck_distance(const PersistenceDiagram& mu, const PersistenceDiagram& nu) {
  return BottleneckSolver(mu.points(), nu.points()).solve(0.0);
}

double bottleneck_distance_at_least(const PersistenceDiagram& mu, const PersistenceDiagram& nu,
                                    double floor) {
  return BottleneckSolver(mu.points(), nu.points()).solve(floor);
}

double diagram_set_distance(const ExtendedDiagramSet& a, const ExtendedDiagramSet& b) {
  // Smallest diagrams first: their distance is cheap and prunes the rest.
  std::array<DiagramType, 4> types = kDiagramTypes;
  std::sort(types.begin(), types.end(), [&](DiagramType x, DiagramType y) {
    return a[x].size() + b[x].size() < a[y].size() + b[y].size();
  });
  double best = 0.0;
  for (DiagramType type : types) best = bottleneck_distance_at_least(a[type], b[type], best);
  return best;
}

}  // namespace heatgraph
