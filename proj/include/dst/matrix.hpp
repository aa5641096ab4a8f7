#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dst {

using cplx = std::complex<double>;

/// Dense complex vector. Entries are finite by construction when built
/// through `from_entries`; arithmetic does not re-check.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : data_(dim, cplx{}) {}
  Vector(std::initializer_list<cplx> init) : data_(init) {}

  static Vector from_entries(std::vector<cplx> entries);
  static Vector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return data_.size(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  std::span<const cplx> entries() const noexcept { return data_; }
  std::span<cplx> entries() noexcept { return data_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(cplx s);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<cplx> data_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(cplx s, Vector v);

/// Euclidean inner product (u, v) = v* u (linear in the first slot).
cplx dot(const Vector& u, const Vector& v);
/// Bilinear pairing <u, c> = sum_i u_i c_i (functional c applied to u).
cplx pair(const Vector& u, const Vector& c);

/// Dense complex matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, cplx{}) {}
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  /// Validates shape and finiteness; throws Error(NonFinite / DimensionMismatch).
  static Matrix from_entries(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  static Matrix identity(std::size_t n);
  static Matrix diag(std::span<const double> d);
  static Matrix diag(std::initializer_list<double> d);
  static Matrix from_columns(std::span<const Vector> cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const cplx> entries() const noexcept { return data_; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);

  /// Conjugate transpose.
  Matrix adjoint() const;
  Matrix transpose() const;
  cplx trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(cplx s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(cplx s, Matrix m);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// Outer product u v*.
Matrix outer(const Vector& u, const Vector& v);

bool all_finite(std::span<const cplx> xs);

}  // namespace dst
