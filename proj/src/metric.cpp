#include "dst/metric.hpp"

#include <cmath>

#include "dst/error.hpp"
#include "dst/linalg.hpp"

namespace dst {

GramMetric GramMetric::from_gram(Matrix g) {
  if (!g.square()) throw Error(ErrorKind::SingularGram, "Gram matrix must be square");
  if (hermitian_defect(g) > 1e-12 * (1.0 + dst::norm(g)))
    throw Error(ErrorKind::SingularGram, "Gram matrix is not Hermitian");
  GramMetric m;
  m.g_ = hermitian_part(g);
  m.l_ = cholesky(m.g_);
  return m;
}

GramMetric GramMetric::euclidean(std::size_t n) {
  GramMetric m;
  m.g_ = Matrix::identity(n);
  m.l_ = Matrix::identity(n);
  return m;
}

cplx GramMetric::inner(const Vector& u, const Vector& v) const { return dot(g_ * u, v); }

double GramMetric::norm(const Vector& u) const { return vnorm(to_euclidean(u)); }

Vector GramMetric::to_euclidean(const Vector& u) const { return l_.adjoint() * u; }

Matrix GramMetric::to_euclidean(const Matrix& a) const {
  // A L^{-*} = (L^{-1} A*)*
  const Matrix x = triangular_solve(l_, a.adjoint(), false).adjoint();
  return l_.adjoint() * x;
}

Matrix GramMetric::from_euclidean(const Matrix& m) const { return triangular_solve(l_, m * l_.adjoint(), true); }

Vector GramMetric::from_euclidean(const Vector& x) const {
  Matrix xm(x.dim(), 1);
  xm.set_column(0, x);
  return triangular_solve(l_, xm, true).column(0);
}

Matrix GramMetric::adjoint(const Matrix& a) const { return from_euclidean(to_euclidean(a).adjoint()); }

double GramMetric::op_norm(const Matrix& a) const { return dst::norm(to_euclidean(a), NormKind::operator2); }

double GramMetric::factor_condition() const {
  const SvdResult s = svd(l_);
  return s.sigma.front() / s.sigma.back();
}

}  // namespace dst
