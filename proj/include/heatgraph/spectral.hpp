#pragma once

#include <cstddef>
#include <vector>

#include "heatgraph/graph.hpp"
#include "heatgraph/matrix.hpp"

namespace heatgraph {

// Eigenvalues below this are treated as the Laplacian kernel.
inline constexpr double kZeroEigenvalue = 1e-8;

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices.
///
/// Stops once every off-diagonal magnitude is at most 1e-12 * ||A||_F;
/// throws NumericalError after 100 sweeps and ValidationError on
/// non-symmetric input.
EigenSystem symmetric_eigen(const Matrix& a);

/// Laplacian eigen-decomposition L = phi Lambda phi^T.
///
/// The first eigenvector is always exactly the constant vector 1/sqrt(n),
/// and kernel eigenvalues are stored as exact zeros. When the kernel has
/// dimension > 1 (disconnected graph) the remaining kernel basis is
/// re-orthonormalized against the constant vector.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  std::size_t size() const { return eigenvalues.size(); }
  std::size_t kernel_dimension() const;
  Matrix reconstruct() const;
};

SpectralDecomposition spectral_decompose(const Matrix& laplacian);
SpectralDecomposition spectral_decompose(const WeightedGraph& g);

/// e^{-tL} = phi e^{-t Lambda} phi^T. Exactly the identity at t = 0.
Matrix heat_kernel(const SpectralDecomposition& dec, double t);

struct HKSVector {
  double t = 0.0;
  std::vector<double> values;
};

/// Heat kernel signature: the diagonal of the heat kernel, clamped to [0, 1].
HKSVector hks(const SpectralDecomposition& dec, double t);

struct EigenBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Bounds on the positive Laplacian eigenvalues of any graph with n vertices
/// and weights in {0} u [w_min, w_max]: (8 w_min / n^2, n w_max).
EigenBounds laplacian_eigen_bounds(std::size_t n, double w_min, double w_max);

}  // namespace heatgraph
