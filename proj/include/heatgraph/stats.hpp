#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "heatgraph/heat_distances.hpp"
#include "heatgraph/matrix.hpp"

namespace heatgraph {

/// N x m process values: row i is the process of pair i sampled on `grid`.
class ProcessMatrix {
 public:
  ProcessMatrix(TimeGrid grid, Matrix rows);

  const TimeGrid& grid() const { return grid_; }
  const Matrix& values() const { return rows_; }
  std::size_t sample_size() const { return rows_.rows(); }
  std::size_t grid_size() const { return rows_.cols(); }

 private:
  TimeGrid grid_;
  Matrix rows_;
};

struct ConfidenceBand {
  TimeGrid grid;
  std::vector<double> mean;
  double c_hat = 0.0;
  double alpha = 0.0;
  std::size_t bootstrap = 0;
  std::uint64_t seed = 0;
  std::size_t sample_size = 0;

  double half_width() const;
  std::vector<double> lower() const;
  std::vector<double> upper() const;
  bool contains(const std::vector<double>& curve) const;
};

struct TwoSampleResult {
  double statistic = 0.0;
  double threshold = 0.0;
  double p_value = 1.0;
  bool reject = false;
  std::size_t bootstrap = 0;
  double alpha = 0.0;
  std::uint64_t seed = 0;
};

std::vector<double> mean_process(const ProcessMatrix& pm);

/// Plug-in covariance P_N(f_t f_s) - P_N f_t P_N f_s (divisor N).
Matrix empirical_covariance(const ProcessMatrix& pm);

/// 1-based rank of the upper alpha-quantile among B sorted replicates:
/// ceil(B (1 - alpha)).
std::size_t upper_quantile_rank(std::size_t replicates, double alpha);

/// Bootstrap sup-norm band: c_hat is the upper alpha-quantile of
/// sqrt(N) max_t |mean*(t) - mean(t)| over B resamples of the rows.
/// Replicate b draws from the stream derive_key(seed, {b}).
ConfidenceBand bootstrap_band(const ProcessMatrix& pm, double alpha, std::size_t replicates,
                              std::uint64_t seed, std::size_t jobs = 1);

/// sqrt(MN / (M + N)) max_t |mean_a(t) - mean_b(t)|.
double two_sample_statistic(const ProcessMatrix& a, const ProcessMatrix& b);

/// Pooled-bootstrap two-sample test of equal mean processes.
TwoSampleResult two_sample_test(const ProcessMatrix& a, const ProcessMatrix& b, double alpha,
                                std::size_t replicates, std::uint64_t seed, std::size_t jobs = 1);

}  // namespace heatgraph
