#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "heatgraph/graph.hpp"
#include "heatgraph/matrix.hpp"
#include "heatgraph/spectral.hpp"

namespace heatgraph {

enum class ProcessKind { HKD, HPD };

std::string_view to_string(ProcessKind kind);
ProcessKind parse_process_kind(std::string_view text);

/// Two graphs together with their Laplacian decompositions, computed once on
/// construction. HKD additionally requires equal sizes (vertex i of the
/// first graph corresponds to vertex i of the second).
class GraphPair {
 public:
  GraphPair(WeightedGraph first, WeightedGraph second);

  const WeightedGraph& first() const { return g1_; }
  const WeightedGraph& second() const { return g2_; }
  const SpectralDecomposition& first_spectrum() const { return dec1_; }
  const SpectralDecomposition& second_spectrum() const { return dec2_; }

  bool same_size() const { return g1_.size() == g2_.size(); }
  std::size_t max_size() const { return std::max(g1_.size(), g2_.size()); }
  double max_weight() const {
    return std::max(g1_.weight_bounds().max, g2_.weight_bounds().max);
  }

 private:
  WeightedGraph g1_, g2_;
  SpectralDecomposition dec1_, dec2_;
};

/// Sorted diffusion times starting at 0.
class TimeGrid {
 public:
  /// m equispaced points from 0 to t_max inclusive; m >= 2, t_max > 0.
  static TimeGrid uniform(double t_max, std::size_t m);
  /// Arbitrary strictly increasing non-negative times (e.g. read from a CSV header).
  static TimeGrid from_times(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double horizon() const { return times_.back(); }
  // Largest gap between consecutive times.
  double max_step() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  std::vector<double> times_;
};

/// ||e^{-tL} - e^{-tL'}||_F from explicit heat kernels.
double hkd_direct(const GraphPair& pair, double t);

/// The same distance from the eigen-elements:
/// sqrt(sum_{k,l >= 2} (e^{-t lambda_k} - e^{-t lambda'_l})^2 <phi_k, phi'_l>^2).
double hkd_spectral(const GraphPair& pair, double t);

/// Max over the four extended diagram types of the bottleneck distance
/// between the heat-kernel-signature diagrams of the two graphs.
double hpd(const GraphPair& pair, double t);

/// Distance process of one pair along a grid. HKD uses the spectral path.
std::vector<double> process_row(const GraphPair& pair, const TimeGrid& grid, ProcessKind kind);

/// Lipschitz constant of t -> distance on graphs with at most n vertices and
/// weights at most w_max: n^{3/2} w_max for HKD, 2 n w_max for HPD.
double lipschitz_constant(std::size_t n, double w_max, ProcessKind kind);

/// Bound on |sup over [0, T] - max over grid|, L * max_step / 2.
double grid_error_bound(double lipschitz, const TimeGrid& grid);

}  // namespace heatgraph
