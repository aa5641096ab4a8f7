#pragma once

#include <cstddef>
#include <limits>

namespace dst {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Numerical policy threaded through every entry point.
///
/// A negative value means "use the dimension-scaled default", which is
/// resolved by the accessor for a concrete dimension `n`.
struct Tolerances {
  /// Relative Hermiticity check: ||M - M*||_F <= hermitian * ||M||_F.
  double hermitian = -1.0;
  /// Singular values sigma_i <= rank * sigma_max count as zero (default n*eps).
  double rank = -1.0;
  /// Eigenvalue gaps below cluster * (1 + max|lambda|) are merged into one atom.
  double cluster = 1e-8;
  /// Pivot threshold for solve(): |u_kk| <= singular * max|u_jj| is singular.
  double singular = -1.0;
  /// Iteration cap (sweeps) for the Jacobi eigen/SVD kernels.
  int max_sweeps = 80;

  double hermitian_for(std::size_t n) const { return hermitian >= 0 ? hermitian : 1e3 * static_cast<double>(n) * kEps; }
  double rank_for(std::size_t n) const { return rank >= 0 ? rank : static_cast<double>(n) * kEps; }
  double singular_for(std::size_t n) const { return singular >= 0 ? singular : static_cast<double>(n) * kEps; }
};

}  // namespace dst
