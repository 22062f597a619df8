#include "heatgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "heatgraph/errors.hpp"

namespace heatgraph {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kRelativeOffDiagonalTol = 1e-12;

double max_off_diagonal(const Matrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j)));
  return worst;
}

void check_symmetric(const Matrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("eigensolver input is not square");
  const double scale = 1.0 + a.frobenius_norm();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale) {
        std::ostringstream msg;
        msg << "eigensolver input is not symmetric at (" << i << ", " << j << ")";
        throw ValidationError(msg.str());
      }
    }
  }
}

// Applies the rotation annihilating a(p, q) to the symmetric matrix `a` and
// accumulates it into `v`.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = a(k, p);
    const double akq = a(k, q);
    const double np = c * akp - s * akq;
    const double nq = s * akp + c * akq;
    a(k, p) = a(p, k) = np;
    a(k, q) = a(q, k) = nq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenSystem symmetric_eigen(const Matrix& input) {
  check_symmetric(input);
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);
  const double tol = kRelativeOffDiagonalTol * input.frobenius_norm();

  int sweeps = 0;
  while (max_off_diagonal(a) > tol) {
    if (sweeps == kMaxSweeps) {
      std::ostringstream msg;
      msg << "Jacobi eigensolver did not converge after " << kMaxSweeps
          << " sweeps: max off-diagonal " << max_off_diagonal(a) << ", tolerance " << tol;
      throw NumericalError(msg.str());
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > tol) rotate(a, v, p, q);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweeps;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::size_t SpectralDecomposition::kernel_dimension() const {
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [](double l) { return l == 0.0; }));
}

Matrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = size();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eigenvalues[k];
    if (lambda == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = lambda * eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += s * eigenvectors(j, k);
    }
  }
  return out;
}

SpectralDecomposition spectral_decompose(const Matrix& l) {
  if (l.rows() == 0) throw ValidationError("cannot decompose the Laplacian of an empty graph");
  EigenSystem sys = symmetric_eigen(l);
  const std::size_t n = l.rows();

  std::size_t kernel = 0;
  while (kernel < n && sys.values[kernel] < kZeroEigenvalue) ++kernel;

  // The constant vector must lie in the computed kernel.
  const double c = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> proj(kernel, 0.0);
  for (std::size_t k = 0; k < kernel; ++k)
    for (std::size_t i = 0; i < n; ++i) proj[k] += c * sys.vectors(i, k);
  double captured = 0.0;
  for (double x : proj) captured += x * x;
  if (kernel == 0 || std::abs(1.0 - captured) > 1e-8) {
    throw ValidationError("matrix is not a graph Laplacian: constant vector outside its kernel");
  }

  // Kernel basis: the constant vector, then pivoted Gram-Schmidt over the
  // computed kernel vectors, keeping the kernel-1 best-conditioned ones.
  std::vector<std::vector<double>> candidates(kernel, std::vector<double>(n));
  for (std::size_t k = 0; k < kernel; ++k)
    for (std::size_t i = 0; i < n; ++i) candidates[k][i] = sys.vectors(i, k);

  std::vector<std::vector<double>> basis{std::vector<double>(n, c)};
  auto orthogonalize = [&](std::vector<double>& x, const std::vector<double>& q) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += x[i] * q[i];
    for (std::size_t i = 0; i < n; ++i) x[i] -= dot * q[i];
  };
  auto norm = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
  };
  for (auto& x : candidates) {
    orthogonalize(x, basis[0]);
    orthogonalize(x, basis[0]);
  }
  while (basis.size() < kernel) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const double nk = norm(candidates[k]);
      if (nk > best_norm) {
        best_norm = nk;
        best = k;
      }
    }
    std::vector<double> q = std::move(candidates[best]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best));
    for (double& qi : q) qi /= best_norm;
    for (auto& x : candidates) {
      orthogonalize(x, q);
      orthogonalize(x, q);
    }
    basis.push_back(std::move(q));
  }

  SpectralDecomposition dec;
  dec.eigenvalues = std::move(sys.values);
  dec.eigenvectors = std::move(sys.vectors);
  for (std::size_t k = 0; k < kernel; ++k) {
    dec.eigenvalues[k] = 0.0;
    for (std::size_t i = 0; i < n; ++i) dec.eigenvectors(i, k) = basis[k][i];
  }
  return dec;
}

SpectralDecomposition spectral_decompose(const WeightedGraph& g) {
  return spectral_decompose(laplacian(g));
}

Matrix heat_kernel(const SpectralDecomposition& dec, double t) {
  if (!(t >= 0.0)) throw ValidationError("diffusion time must be non-negative");
  const std::size_t n = dec.size();
  if (t == 0.0) return Matrix::identity(n);
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double decay = std::exp(-t * dec.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = decay * dec.eigenvectors(i, k);
      auto row = out.row(i);
      for (std::size_t j = i; j < n; ++j) row[j] += s * dec.eigenvectors(j, k);
    }
  }
  // Mirror so the kernel is exactly symmetric.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out(i, j) = out(j, i);
  return out;
}

HKSVector hks(const SpectralDecomposition& dec, double t) {
  if (!(t >= 0.0)) throw ValidationError("diffusion time must be non-negative");
  const std::size_t n = dec.size();
  HKSVector out{t, std::vector<double>(n, 1.0)};
  if (t == 0.0) return out;
  std::vector<double> decay(n);
  for (std::size_t k = 0; k < n; ++k) decay[k] = std::exp(-t * dec.eigenvalues[k]);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    auto row = dec.eigenvectors.row(i);
    for (std::size_t k = 0; k < n; ++k) s += decay[k] * row[k] * row[k];
    out.values[i] = std::clamp(s, 0.0, 1.0);
  }
  return out;
}

EigenBounds laplacian_eigen_bounds(std::size_t n, double w_min, double w_max) {
  const double nn = static_cast<double>(n);
  return {8.0 * w_min / (nn * nn), nn * w_max};
}

}  // namespace heatgraph
