#pragma once

#include "dst/matrix.hpp"

namespace dst {

/// Inner product (u, v)_H = v* G u for a Hermitian positive-definite Gram
/// matrix G = L L*. Coordinates x = L* u are Euclidean-isometric to H, so
/// every H-metric computation is an ordinary Euclidean one on
/// L* (.) L^{-*}.
class GramMetric {
 public:
  /// Throws SingularGram if G is not Hermitian positive definite.
  static GramMetric from_gram(Matrix g);
  static GramMetric euclidean(std::size_t n);

  std::size_t dim() const noexcept { return g_.rows(); }
  const Matrix& gram() const noexcept { return g_; }
  /// Lower-triangular Cholesky factor L.
  const Matrix& factor() const noexcept { return l_; }

  cplx inner(const Vector& u, const Vector& v) const;
  double norm(const Vector& u) const;

  /// L* u.
  Vector to_euclidean(const Vector& u) const;
  /// L* A L^{-*}.
  Matrix to_euclidean(const Matrix& a) const;
  /// L^{-*} M L*.
  Matrix from_euclidean(const Matrix& m) const;
  /// L^{-*} x.
  Vector from_euclidean(const Vector& x) const;

  /// H-adjoint G^{-1} A* G.
  Matrix adjoint(const Matrix& a) const;
  /// Operator norm on H.
  double op_norm(const Matrix& a) const;
  /// sigma_max(L) / sigma_min(L) = sqrt(cond_2(G)).
  double factor_condition() const;

 private:
  Matrix g_;
  Matrix l_;
};

}  // namespace dst
