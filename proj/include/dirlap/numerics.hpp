#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "dirlap/matrix.hpp"

namespace dirlap {

using Complex = std::complex<double>;

struct EigenOptions {
  /// Permute to block triangular form along the strongly connected components
  /// of the nonzero pattern and solve each diagonal block separately.
  bool split_reducible = true;
  bool balance = true;
  /// Iteration cap per diagonal block is `iteration_factor * block size`.
  int iteration_factor = 100;
};

/// All eigenvalues with multiplicity, sorted by (real, imag). Real input gives
/// exactly conjugate pairs; real eigenvalues carry an exact zero imaginary part.
/// Throws ValidationError for non-square input and ConvergenceError when the
/// QR iteration cap is reached.
std::vector<Complex> eigenvalues(const Matrix& m, const EigenOptions& options = {});

/// Tolerances derived from a matrix.
struct Tolerances {
  double rank = 0.0;  ///< max(1e-12, n * eps * ||M||_F)
  double zero = 0.0;  ///< max(1e-8, 1e3 * rank)
  double scale = 1.0; ///< max(1, ||M||_F)
};
Tolerances default_tolerances(const Matrix& m);

struct KernelResult {
  std::size_t rank = 0;
  /// Orthonormal basis of the kernel, one vector per entry (length cols()).
  std::vector<std::vector<double>> basis;
  double tolerance = 0.0;
  /// Nullity is the same at tolerance / 10 and tolerance * 10.
  bool stable = true;
};

/// Householder QR with column pivoting applied to M^T; the trailing columns of
/// the orthogonal factor span ker M. `tolerance` is absolute on |R_kk|; nullopt
/// selects Tolerances::rank.
KernelResult kernel_and_rank(const Matrix& m, std::optional<double> tolerance = std::nullopt);

enum class Multiplicity { algebraic, geometric };

/// algebraic: number of eigenvalues with modulus below the threshold;
/// geometric: nullity. With a relative tolerance the threshold is
/// tol * max(1, ||M||_F); otherwise it is Tolerances::zero.
std::size_t zero_multiplicity(const Matrix& m, Multiplicity mode, std::optional<double> relative_tolerance = std::nullopt);

struct SpectralReport {
  std::vector<Complex> eigenvalues;
  std::size_t zero_multiplicity_algebraic = 0;
  std::size_t zero_multiplicity_geometric = 0;
  std::vector<std::vector<double>> kernel_basis;
  double tolerance = 0.0;  ///< absolute zero threshold actually used
};

SpectralReport spectral_report(const Matrix& m, std::optional<double> relative_tolerance = std::nullopt,
                               const EigenOptions& options = {});

/// Determinant by Gaussian elimination with partial pivoting.
double determinant(const Matrix& m);

/// Greedy nearest-neighbour matching of two multisets; returns the largest
/// matched distance (infinity when the sizes differ).
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Orthonormal basis (modified Gram-Schmidt, twice) of the span of `vectors`;
/// vectors whose residual norm falls below `tol` are dropped.
std::vector<std::vector<double>> orthonormalize(const std::vector<std::vector<double>>& vectors, double tol = 1e-12);

/// Frobenius norm of P_a - P_b for the orthogonal projectors onto the spans of
/// two orthonormal families. Bounds the spectral-norm subspace distance.
double subspace_distance(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b);

}  // namespace dirlap
