#pragma once

#include <cstddef>
#include <vector>

#include "dst/config.hpp"
#include "dst/matrix.hpp"

namespace dst {

/// A = U T = Tbar U with T = (A*A)^{1/2}, Tbar = (AA*)^{1/2} and U the
/// partial isometry that vanishes on ker(T).
struct PolarDecomposition {
  Matrix U;
  Matrix T;
  Matrix Tbar;
  std::size_t rank = 0;
  /// Relative rank threshold actually used (sigma_i <= tol * sigma_max is zero).
  double tol = 0.0;
  /// Singular values of A, descending.
  std::vector<double> sigma;
  /// Right singular vectors of A (eigenvectors of T), columns ordered as `sigma`.
  Matrix right;
};

/// SVD route: A = W S V*  =>  T = V S V*, Tbar = W S W*, U = W P_r V*.
/// Throws NotSquare, ConvergenceFailure.
PolarDecomposition polar_decompose(const Matrix& a, const Tolerances& tol = {});

/// ||A A* U - U A* A||_F / (1 + ||A||_F^2).
double intertwining_check(const PolarDecomposition& p, const Matrix& a);

/// Orthogonal projector onto range(T), i.e. U*U.
Matrix initial_projector(const PolarDecomposition& p);

}  // namespace dst
