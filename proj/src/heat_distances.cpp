#include "heatgraph/heat_distances.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatgraph/errors.hpp"
#include "heatgraph/persistence.hpp"

namespace heatgraph {

std::string_view to_string(ProcessKind kind) { return kind == ProcessKind::HKD ? "hkd" : "hpd"; }

ProcessKind parse_process_kind(std::string_view text) {
  if (text == "hkd" || text == "HKD") return ProcessKind::HKD;
  if (text == "hpd" || text == "HPD") return ProcessKind::HPD;
  throw ValidationError("unknown process kind '" + std::string(text) + "' (expected hkd or hpd)");
}

GraphPair::GraphPair(WeightedGraph first, WeightedGraph second)
    : g1_(std::move(first)),
      g2_(std::move(second)),
      dec1_(spectral_decompose(g1_)),
      dec2_(spectral_decompose(g2_)) {}

TimeGrid TimeGrid::uniform(double t_max, std::size_t m) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ValidationError("time horizon must be positive");
  if (m < 2) throw ValidationError("a time grid needs at least 2 points");
  TimeGrid g;
  g.times_.resize(m);
  for (std::size_t j = 0; j < m; ++j)
    g.times_[j] = t_max * static_cast<double>(j) / static_cast<double>(m - 1);
  g.times_.back() = t_max;
  return g;
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
  if (times.empty()) throw ValidationError("empty time grid");
  for (std::size_t j = 0; j < times.size(); ++j) {
    if (!(times[j] >= 0.0) || !std::isfinite(times[j]))
      throw ValidationError("grid times must be finite and non-negative");
    if (j > 0 && !(times[j] > times[j - 1]))
      throw ValidationError("grid times must be strictly increasing");
  }
  TimeGrid g;
  g.times_ = std::move(times);
  return g;
}

double TimeGrid::max_step() const {
  double step = 0.0;
  for (std::size_t j = 1; j < times_.size(); ++j) step = std::max(step, times_[j] - times_[j - 1]);
  return step;
}

namespace {

void require_same_size(const GraphPair& pair) {
  if (!pair.same_size()) {
    std::ostringstream msg;
    msg << "HKD needs graphs of equal size with node correspondence, got "
        << pair.first().size() << " and " << pair.second().size();
    throw ValidationError(msg.str());
  }
}

// Squared overlaps <phi_k, phi'_l>^2 for k, l >= 2, evaluated once per pair.
class SpectralHkd {
 public:
  explicit SpectralHkd(const GraphPair& pair)
      : lambda1_(pair.first_spectrum().eigenvalues),
        lambda2_(pair.second_spectrum().eigenvalues) {
    require_same_size(pair);
    const std::size_t n = lambda1_.size();
    const Matrix& phi1 = pair.first_spectrum().eigenvectors;
    const Matrix& phi2 = pair.second_spectrum().eigenvectors;
    overlap_ = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      auto r1 = phi1.row(i);
      auto r2 = phi2.row(i);
      for (std::size_t k = 1; k < n; ++k) {
        const double a = r1[k];
        auto out = overlap_.row(k);
        for (std::size_t l = 1; l < n; ++l) out[l] += a * r2[l];
      }
    }
    for (std::size_t k = 1; k < n; ++k)
      for (std::size_t l = 1; l < n; ++l) overlap_(k, l) *= overlap_(k, l);
    decay1_.resize(n);
    decay2_.resize(n);
  }

  double operator()(double t) {
    if (!(t >= 0.0)) throw ValidationError("diffusion time must be non-negative");
    const std::size_t n = lambda1_.size();
    for (std::size_t k = 0; k < n; ++k) {
      decay1_[k] = std::exp(-t * lambda1_[k]);
      decay2_[k] = std::exp(-t * lambda2_[k]);
    }
    double sum = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      auto row = overlap_.row(k);
      for (std::size_t l = 1; l < n; ++l) {
        const double d = decay1_[k] - decay2_[l];
        sum += d * d * row[l];
      }
    }
    return std::sqrt(sum);
  }

 private:
  const std::vector<double>& lambda1_;
  const std::vector<double>& lambda2_;
  Matrix overlap_;
  std::vector<double> decay1_, decay2_;
};

ExtendedDiagramSet hks_diagrams(const WeightedGraph& g, const SpectralDecomposition& dec,
                                double t) {
  return extended_persistence(g, hks(dec, t).values);
}

}  // namespace

double hkd_direct(const GraphPair& pair, double t) {
  require_same_size(pair);
  return (heat_kernel(pair.first_spectrum(), t) - heat_kernel(pair.second_spectrum(), t))
      .frobenius_norm();
}

double hkd_spectral(const GraphPair& pair, double t) { return SpectralHkd(pair)(t); }

double hpd(const GraphPair& pair, double t) {
  return diagram_set_distance(hks_diagrams(pair.first(), pair.first_spectrum(), t),
                              hks_diagrams(pair.second(), pair.second_spectrum(), t));
}

std::vector<double> process_row(const GraphPair& pair, const TimeGrid& grid, ProcessKind kind) {
  std::vector<double> row;
  row.reserve(grid.size());
  if (kind == ProcessKind::HKD) {
    SpectralHkd evaluate(pair);
    for (double t : grid.times()) row.push_back(evaluate(t));
  } else {
    for (double t : grid.times()) row.push_back(hpd(pair, t));
  }
  return row;
}

double lipschitz_constant(std::size_t n, double w_max, ProcessKind kind) {
  const double nn = static_cast<double>(n);
  return kind == ProcessKind::HKD ? std::pow(nn, 1.5) * w_max : 2.0 * nn * w_max;
}

double grid_error_bound(double lipschitz, const TimeGrid& grid) {
  return lipschitz * grid.max_step() / 2.0;
}

}  // namespace heatgraph
