#pragma once

#include <vector>

#include "dst/config.hpp"
#include "dst/matrix.hpp"

namespace dst {

/// Orthonormal eigen-decomposition M = V diag(values) V* of a Hermitian
/// matrix; values ascending.
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
};

/// Thin SVD M = left diag(sigma) right*; sigma descending, k = min(rows, cols).
struct SvdResult {
  Matrix left;
  std::vector<double> sigma;
  Matrix right;
};

enum class NormKind { frobenius, operator2 };

/// Cyclic complex Jacobi. Throws NotSquare, NotHermitian, ConvergenceFailure.
EigenSystem hermitian_eigen(const Matrix& m, const Tolerances& tol = {});

/// One-sided (Hestenes) Jacobi. Columns of `left` belonging to numerically
/// zero singular values are an orthonormal completion. Throws
/// ConvergenceFailure after `tol.max_sweeps` sweeps.
SvdResult svd(const Matrix& m, const Tolerances& tol = {});

/// LU with partial pivoting. Throws NotSquare, DimensionMismatch, Singular.
Vector solve(const Matrix& m, const Vector& b, const Tolerances& tol = {});
Matrix solve(const Matrix& m, const Matrix& b, const Tolerances& tol = {});
Matrix inverse(const Matrix& m, const Tolerances& tol = {});

/// Lower-triangular L with G = L L*. Throws SingularGram when G is not
/// numerically positive definite.
Matrix cholesky(const Matrix& g);
/// Solves L x = b (lower) or L* x = b (upper = true) by substitution.
Matrix triangular_solve(const Matrix& l, const Matrix& b, bool adjoint_of_lower);

double norm(const Matrix& m, NormKind kind = NormKind::frobenius);
/// l^p norm, p >= 1 or +infinity. Throws InvalidP.
double vnorm(const Vector& v, double p = 2.0);
/// Largest |m_ij|.
double max_abs(const Matrix& m);

/// ||M - M*||_F.
double hermitian_defect(const Matrix& m);
/// (M + M*) / 2.
Matrix hermitian_part(const Matrix& m);

}  // namespace dst
