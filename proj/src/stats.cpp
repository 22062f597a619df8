#include "heatgraph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatgraph/errors.hpp"
#include "heatgraph/parallel.hpp"
#include "heatgraph/random.hpp"

namespace heatgraph {

ProcessMatrix::ProcessMatrix(TimeGrid grid, Matrix rows) : grid_(std::move(grid)), rows_(std::move(rows)) {
  if (rows_.rows() == 0) throw ValidationError("a process matrix needs at least one row");
  if (rows_.cols() != grid_.size()) {
    std::ostringstream msg;
    msg << "process rows have " << rows_.cols() << " columns but the grid has " << grid_.size()
        << " times";
    throw ValidationError(msg.str());
  }
}

double ConfidenceBand::half_width() const {
  return c_hat / std::sqrt(static_cast<double>(sample_size));
}

std::vector<double> ConfidenceBand::lower() const {
  std::vector<double> out = mean;
  for (double& x : out) x -= half_width();
  return out;
}

std::vector<double> ConfidenceBand::upper() const {
  std::vector<double> out = mean;
  for (double& x : out) x += half_width();
  return out;
}

bool ConfidenceBand::contains(const std::vector<double>& curve) const {
  if (curve.size() != mean.size()) throw ValidationError("curve and band have different grids");
  const double h = half_width();
  for (std::size_t j = 0; j < curve.size(); ++j)
    if (std::abs(curve[j] - mean[j]) > h) return false;
  return true;
}

std::vector<double> mean_process(const ProcessMatrix& pm) {
  const Matrix& x = pm.values();
  std::vector<double> mean(x.cols(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = x.row(i);
    for (std::size_t j = 0; j < x.cols(); ++j) mean[j] += row[j];
  }
  for (double& m : mean) m /= static_cast<double>(x.rows());
  return mean;
}

Matrix empirical_covariance(const ProcessMatrix& pm) {
  if (pm.sample_size() < 2) throw ValidationError("covariance needs at least two rows");
  const Matrix& x = pm.values();
  const std::vector<double> mean = mean_process(pm);
  const std::size_t m = x.cols();
  Matrix cov(m, m);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto row = x.row(i);
    for (std::size_t s = 0; s < m; ++s) {
      const double ds = row[s] - mean[s];
      for (std::size_t t = s; t < m; ++t) cov(s, t) += ds * (row[t] - mean[t]);
    }
  }
  const double inv = 1.0 / static_cast<double>(x.rows());
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t t = s; t < m; ++t) {
      cov(s, t) *= inv;
      cov(t, s) = cov(s, t);
    }
  }
  return cov;
}

std::size_t upper_quantile_rank(std::size_t replicates, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
  if (replicates == 0) throw ValidationError("at least one bootstrap replicate is required");
  // The guard keeps B(1 - alpha) = 990.0000000001 from rounding up to 991.
  const double target = static_cast<double>(replicates) * (1.0 - alpha) - 1e-9;
  const auto rank = static_cast<std::size_t>(std::ceil(target));
  return std::clamp<std::size_t>(rank, 1, replicates);
}

namespace {

double order_statistic(std::vector<double> values, std::size_t rank) {
  auto it = values.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(values.begin(), it, values.end());
  return *it;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

// Mean of the rows of `x` selected by indices[begin, end).
void resampled_mean(const Matrix& x, const std::vector<std::size_t>& indices, std::size_t begin,
                    std::size_t end, std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t k = begin; k < end; ++k) {
    auto row = x.row(indices[k]);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += row[j];
  }
  const double inv = 1.0 / static_cast<double>(end - begin);
  for (double& v : out) v *= inv;
}

}  // namespace

ConfidenceBand bootstrap_band(const ProcessMatrix& pm, double alpha, std::size_t replicates,
                              std::uint64_t seed, std::size_t jobs) {
  const std::size_t n = pm.sample_size();
  if (n < 2) throw ValidationError("a bootstrap band needs at least two rows");
  const std::size_t rank = upper_quantile_rank(replicates, alpha);
  const std::vector<double> mean = mean_process(pm);
  const double root_n = std::sqrt(static_cast<double>(n));

  auto stats = parallel_map(jobs, replicates, [&](std::size_t b) {
    Rng rng(seed, {b});
    std::vector<std::size_t> indices(n);
    for (auto& i : indices) i = rng.below(n);
    std::vector<double> boot(pm.grid_size());
    resampled_mean(pm.values(), indices, 0, n, boot);
    return root_n * sup_distance(boot, mean);
  });

  ConfidenceBand band;
  band.grid = pm.grid();
  band.mean = mean;
  band.c_hat = order_statistic(std::move(stats), rank);
  band.alpha = alpha;
  band.bootstrap = replicates;
  band.seed = seed;
  band.sample_size = n;
  return band;
}

double two_sample_statistic(const ProcessMatrix& a, const ProcessMatrix& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("the two samples use different time grids");
  const double m = static_cast<double>(a.sample_size());
  const double n = static_cast<double>(b.sample_size());
  return std::sqrt(m * n / (m + n)) * sup_distance(mean_process(a), mean_process(b));
}

TwoSampleResult two_sample_test(const ProcessMatrix& a, const ProcessMatrix& b, double alpha,
                                std::size_t replicates, std::uint64_t seed, std::size_t jobs) {
  if (a.sample_size() < 2 || b.sample_size() < 2)
    throw ValidationError("a two-sample test needs at least two rows per sample");
  const std::size_t rank = upper_quantile_rank(replicates, alpha);
  const double statistic = two_sample_statistic(a, b);

  const std::size_t m = a.sample_size();
  const std::size_t n = b.sample_size();
  const std::size_t cols = a.grid_size();
  Matrix pooled(m + n, cols);
  for (std::size_t i = 0; i < m; ++i) std::ranges::copy(a.values().row(i), pooled.row(i).begin());
  for (std::size_t i = 0; i < n; ++i)
    std::ranges::copy(b.values().row(i), pooled.row(m + i).begin());
  const double scale =
      std::sqrt(static_cast<double>(m) * static_cast<double>(n) / static_cast<double>(m + n));

  auto stats = parallel_map(jobs, replicates, [&](std::size_t r) {
    Rng rng(seed, {r});
    std::vector<std::size_t> indices(m + n);
    for (auto& i : indices) i = rng.below(m + n);
    std::vector<double> first(cols), second(cols);
    resampled_mean(pooled, indices, 0, m, first);
    resampled_mean(pooled, indices, m, m + n, second);
    return scale * sup_distance(first, second);
  });

  const auto exceed = std::count_if(stats.begin(), stats.end(),
                                    [&](double s) { return s >= statistic; });

  TwoSampleResult result;
  result.statistic = statistic;
  result.threshold = order_statistic(std::move(stats), rank);
  result.p_value = static_cast<double>(1 + exceed) / static_cast<double>(replicates + 1);
  result.reject = statistic > result.threshold;
  result.bootstrap = replicates;
  result.alpha = alpha;
  result.seed = seed;
  return result;
}

}  // namespace heatgraph
