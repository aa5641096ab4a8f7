#include "dst/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dst/error.hpp"

namespace dst {

namespace {

// Unitary 2x2 J = [[c, s], [-s*ph, c*ph]] that diagonalizes the Hermitian
// block [[alpha, gamma], [conj(gamma), beta]] via J* B J.
struct Rotation {
  double c;
  double s;
  cplx ph;
};

Rotation jacobi_rotation(double alpha, double beta, cplx gamma) {
  const double g = std::abs(gamma);
  const cplx ph = std::conj(gamma) / g;
  const double theta = (beta - alpha) / (2.0 * g);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, ph};
}

// M <- M J restricted to columns p, q.
void rotate_columns(Matrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const cplx jqp = -r.s * r.ph;
  const cplx jqq = r.c * r.ph;
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const cplx mkp = m(k, p);
    const cplx mkq = m(k, q);
    m(k, p) = mkp * r.c + mkq * jqp;
    m(k, q) = mkp * r.s + mkq * jqq;
  }
}

// M <- J* M restricted to rows p, q.
void rotate_rows(Matrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const cplx jqp = std::conj(-r.s * r.ph);
  const cplx jqq = std::conj(r.c * r.ph);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const cplx mpk = m(p, k);
    const cplx mqk = m(q, k);
    m(p, k) = r.c * mpk + jqp * mqk;
    m(q, k) = r.s * mpk + jqq * mqk;
  }
}

double off_diagonal_sq(const Matrix& a) {
  double off = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) off += std::norm(a(i, j));
  return off;
}

double column_norm_sq(const Matrix& m, std::size_t j) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, j));
  return s;
}

void require_square(const Matrix& m, const char* what) {
  if (!m.square())
    throw Error(ErrorKind::NotSquare,
                std::string(what) + ": " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// Appends an orthonormal column to `basis` (first `count` columns are
// orthonormal) starting from `seed`, falling back to unit vectors.
void complete_column(Matrix& basis, std::size_t count, std::size_t target, Vector seed) {
  const std::size_t n = basis.rows();
  auto orthogonalize = [&](Vector v) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < count; ++j) {
        if (j == target) continue;
        const Vector bj = basis.column(j);
        v -= dot(v, bj) * bj;
      }
    return v;
  };
  Vector v = orthogonalize(std::move(seed));
  double nv = vnorm(v);
  for (std::size_t k = 0; nv < 0.5 && k < n; ++k) {
    v = orthogonalize(Vector::basis(n, k));
    nv = vnorm(v);
  }
  basis.set_column(target, (1.0 / nv) * v);
}

SvdResult svd_tall(const Matrix& m, const Tolerances& tol) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  Matrix w = m;
  Matrix v = Matrix::identity(n);
  const double fro = norm(m);
  const double tiny = (kEps * fro) * (kEps * fro);

  bool converged = n < 2;
  for (int sweep = 0; sweep < tol.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (g <= tiny || g <= kEps * std::sqrt(alpha * beta)) continue;
        converged = false;
        const Rotation r = jacobi_rotation(alpha, beta, gamma);
        rotate_columns(w, p, q, r);
        rotate_columns(v, p, q, r);
      }
  }
  if (!converged)
    throw Error(ErrorKind::ConvergenceFailure, "one-sided Jacobi SVD did not converge in " +
                                                   std::to_string(tol.max_sweeps) + " sweeps");

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) sig[j] = std::sqrt(column_norm_sq(w, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sig[a] > sig[b]; });

  SvdResult out{Matrix(rows, n), std::vector<double>(n), Matrix(n, n)};
  const double smax = n ? sig[order[0]] : 0.0;
  const double cutoff = static_cast<double>(std::max(rows, n)) * kEps * smax;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.sigma[k] = sig[j];
    out.right.set_column(k, v.column(j));
  }
  // Well-separated columns first, then orthonormal completion for the rest.
  std::size_t accepted = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    if (sig[j] > cutoff && sig[j] > 0.0) {
      out.left.set_column(k, (1.0 / sig[j]) * w.column(j));
      accepted = k + 1;
    }
  }
  for (std::size_t k = accepted; k < n; ++k) {
    const std::size_t j = order[k];
    Vector seed = sig[j] > 0.0 ? (1.0 / sig[j]) * w.column(j) : Vector::basis(rows, k % rows);
    complete_column(out.left, k, k, std::move(seed));
  }
  return out;
}

struct Lu {
  Matrix lu;
  std::vector<std::size_t> perm;
};

Lu lu_factor(const Matrix& m, const Tolerances& tol) {
  require_square(m, "solve");
  const std::size_t n = m.rows();
  Lu f{m, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), 0);
  const double scale = max_abs(m);
  const double thresh = tol.singular_for(n) * scale;
  if (scale == 0.0) throw Error(ErrorKind::Singular, "zero matrix");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > best) {
        best = std::abs(f.lu(i, k));
        piv = i;
      }
    if (best <= thresh)
      throw Error(ErrorKind::Singular, "pivot " + std::to_string(k) + " below tolerance");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx l = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = l;
      if (l == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

Matrix lu_solve(const Lu& f, const Matrix& b) {
  const std::size_t n = f.lu.rows();
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(i, c) = b(f.perm[i], c);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) x(i, c) -= f.lu(i, k) * x(k, c);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x(i, c) -= f.lu(i, k) * x(k, c);
      x(i, c) /= f.lu(i, i);
    }
  }
  return x;
}

}  // namespace

EigenSystem hermitian_eigen(const Matrix& m, const Tolerances& tol) {
  require_square(m, "hermitian_eigen");
  const std::size_t n = m.rows();
  const double fro = norm(m);
  if (hermitian_defect(m) > tol.hermitian_for(n) * fro)
    throw Error(ErrorKind::NotHermitian, "||M - M*|| exceeds tolerance");

  Matrix a = hermitian_part(m);
  Matrix v = Matrix::identity(n);
  const double target = (kEps * fro) * (kEps * fro);
  bool converged = false;
  for (int sweep = 0; sweep <= tol.max_sweeps; ++sweep) {
    if (off_diagonal_sq(a) <= target) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) == 0.0) continue;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
  }
  if (!converged)
    throw Error(ErrorKind::ConvergenceFailure,
                "Jacobi eigensolver did not converge in " + std::to_string(tol.max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EigenSystem es{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    es.vectors.set_column(k, v.column(order[k]));
  }
  return es;
}

SvdResult svd(const Matrix& m, const Tolerances& tol) {
  if (m.rows() >= m.cols()) return svd_tall(m, tol);
  SvdResult t = svd_tall(m.adjoint(), tol);
  return {std::move(t.right), std::move(t.sigma), std::move(t.left)};
}

Vector solve(const Matrix& m, const Vector& b, const Tolerances& tol) {
  if (b.dim() != m.rows())
    throw Error(ErrorKind::DimensionMismatch, "solve: rhs dimension " + std::to_string(b.dim()));
  Matrix bm(b.dim(), 1);
  bm.set_column(0, b);
  return lu_solve(lu_factor(m, tol), bm).column(0);
}

Matrix solve(const Matrix& m, const Matrix& b, const Tolerances& tol) {
  if (b.rows() != m.rows())
    throw Error(ErrorKind::DimensionMismatch, "solve: rhs rows " + std::to_string(b.rows()));
  return lu_solve(lu_factor(m, tol), b);
}

Matrix inverse(const Matrix& m, const Tolerances& tol) {
  require_square(m, "inverse");
  return solve(m, Matrix::identity(m.rows()), tol);
}

Matrix cholesky(const Matrix& g) {
  require_square(g, "cholesky");
  const std::size_t n = g.rows();
  double dmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) dmax = std::max(dmax, g(i, i).real());
  const double floor = static_cast<double>(n) * kEps * dmax;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = g(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > floor)) throw Error(ErrorKind::SingularGram, "Gram matrix is not positive definite");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Matrix triangular_solve(const Matrix& l, const Matrix& b, bool adjoint_of_lower) {
  const std::size_t n = l.rows();
  if (b.rows() != n) throw Error(ErrorKind::DimensionMismatch, "triangular_solve");
  Matrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    if (!adjoint_of_lower) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) x(i, c) -= l(i, k) * x(k, c);
        x(i, c) /= l(i, i);
      }
    } else {
      // L* is upper triangular with (L*)_{ik} = conj(L_{ki}).
      for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) x(i, c) -= std::conj(l(k, i)) * x(k, c);
        x(i, c) /= std::conj(l(i, i));
      }
    }
  }
  return x;
}

double norm(const Matrix& m, NormKind kind) {
  if (kind == NormKind::operator2) {
    const auto s = svd(m);
    return s.sigma.empty() ? 0.0 : s.sigma.front();
  }
  double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z / scale);
  return scale * std::sqrt(s);
}

double vnorm(const Vector& v, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidP, "p must be >= 1, got " + std::to_string(p));
  double scale = 0.0;
  for (const auto& z : v.entries()) scale = std::max(scale, std::abs(z));
  if (scale == 0.0 || std::isinf(p)) return scale;
  double s = 0.0;
  if (p == 2.0) {
    for (const auto& z : v.entries()) s += std::norm(z / scale);
    return scale * std::sqrt(s);
  }
  if (p == 1.0) {
    for (const auto& z : v.entries()) s += std::abs(z);
    return s;
  }
  for (const auto& z : v.entries()) s += std::pow(std::abs(z) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

double max_abs(const Matrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s = std::max(s, std::abs(z));
  return s;
}

double hermitian_defect(const Matrix& m) {
  if (!m.square()) return std::numeric_limits<double>::infinity();
  return norm(m - m.adjoint());
}

Matrix hermitian_part(const Matrix& m) {
  Matrix h = 0.5 * (m + m.adjoint());
  for (std::size_t i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return h;
}

}  // namespace dst
