#include "dst/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dst/error.hpp"

namespace dst {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

bool all_finite(std::span<const cplx> xs) {
  for (const auto& z : xs)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

// ---------------------------------------------------------------- Vector

Vector Vector::from_entries(std::vector<cplx> entries) {
  if (!all_finite(entries)) throw Error(ErrorKind::NonFinite, "vector has NaN/Inf entries");
  Vector v;
  v.data_ = std::move(entries);
  return v;
}

Vector Vector::basis(std::size_t dim, std::size_t k) {
  Vector v(dim);
  v[k] = 1.0;
  return v;
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "vector add");
  for (std::size_t i = 0; i < dim(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_same_dim(dim(), other.dim(), "vector sub");
  for (std::size_t i = 0; i < dim(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(cplx s, Vector v) { return v *= s; }

cplx dot(const Vector& u, const Vector& v) {
  require_same_dim(u.dim(), v.dim(), "dot");
  cplx s{};
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

cplx pair(const Vector& u, const Vector& c) {
  require_same_dim(u.dim(), c.dim(), "pair");
  cplx s{};
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * c[i];
  return s;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require_same_dim(r.size(), cols_, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols, std::vector<cplx> entries) {
  if (rows == 0 || cols == 0) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be positive");
  require_same_dim(entries.size(), rows * cols, "rows*cols vs entry count");
  if (!all_finite(entries)) throw Error(ErrorKind::NonFinite, "matrix has NaN/Inf entries");
  Matrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.data_ = std::move(entries);
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diag(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diag(std::initializer_list<double> d) {
  return diag(std::span<const double>(d.begin(), d.size()));
}

Matrix Matrix::from_columns(std::span<const Vector> cols) {
  if (cols.empty()) return {};
  Matrix m(cols[0].dim(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  require_same_dim(v.dim(), rows_, "set_column");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx Matrix::trace() const {
  cplx s{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_dim(rows_, other.rows_, "matrix add rows");
  require_same_dim(cols_, other.cols_, "matrix add cols");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_dim(rows_, other.rows_, "matrix sub rows");
  require_same_dim(cols_, other.cols_, "matrix sub cols");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a.cols(), b.rows(), "matmul");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
  require_same_dim(a.cols(), x.dim(), "matvec");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s{};
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix outer(const Vector& u, const Vector& v) {
  Matrix m(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

}  // namespace dst
