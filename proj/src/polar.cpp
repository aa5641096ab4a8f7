#include "dst/polar.hpp"

#include "dst/error.hpp"
#include "dst/linalg.hpp"

namespace dst {

namespace {

// sum_k w_k * d_k * v_k^*  over the first `count` columns.
Matrix weighted_outer_sum(const Matrix& w, std::span<const double> d, const Matrix& v, std::size_t count) {
  Matrix out(w.rows(), v.rows());
  for (std::size_t k = 0; k < count; ++k) {
    if (d[k] == 0.0) continue;
    for (std::size_t i = 0; i < w.rows(); ++i) {
      const cplx wi = w(i, k) * d[k];
      for (std::size_t j = 0; j < v.rows(); ++j) out(i, j) += wi * std::conj(v(j, k));
    }
  }
  return out;
}

}  // namespace

PolarDecomposition polar_decompose(const Matrix& a, const Tolerances& tol) {
  if (!a.square())
    throw Error(ErrorKind::NotSquare, "polar_decompose needs a square matrix");
  const std::size_t n = a.rows();
  SvdResult s = svd(a, tol);

  PolarDecomposition p;
  p.tol = tol.rank_for(n);
  const double smax = s.sigma.empty() ? 0.0 : s.sigma.front();
  for (double sv : s.sigma)
    if (sv > p.tol * smax) ++p.rank;

  const std::vector<double> ones(n, 1.0);
  p.T = hermitian_part(weighted_outer_sum(s.right, s.sigma, s.right, n));
  p.Tbar = hermitian_part(weighted_outer_sum(s.left, s.sigma, s.left, n));
  p.U = weighted_outer_sum(s.left, ones, s.right, p.rank);
  p.sigma = std::move(s.sigma);
  p.right = std::move(s.right);
  return p;
}

double intertwining_check(const PolarDecomposition& p, const Matrix& a) {
  if (!a.square() || a.rows() != p.U.rows())
    throw Error(ErrorKind::DimensionMismatch, "intertwining_check: A does not match the decomposition");
  const Matrix ah = a.adjoint();
  const Matrix lhs = a * ah * p.U;
  const Matrix rhs = p.U * ah * a;
  const double na = norm(a);
  return norm(lhs - rhs) / (1.0 + na * na);
}

Matrix initial_projector(const PolarDecomposition& p) { return p.U.adjoint() * p.U; }

}  // namespace dst
