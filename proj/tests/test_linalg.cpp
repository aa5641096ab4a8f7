#include "doctest.h"

#include <algorithm>
#include <limits>

#include "dst/error.hpp"
#include "dst/linalg.hpp"
#include "helpers.hpp"

using namespace dst;
using testing::random_matrix;

TEST_CASE("matrix construction validates shape and finiteness") {
  CHECK_THROWS_AS(Matrix::from_entries(2, 2, {1.0, 2.0, 3.0}), Error);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    Matrix::from_entries(1, 2, {1.0, cplx(0.0, nan)});
    FAIL("expected NonFinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
  try {
    (void)(Matrix(2, 3) * Matrix(2, 3));
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionMismatch);
  }
}

TEST_CASE("dot is conjugate-linear in the second slot") {
  const Vector u{cplx(1, 1), 2.0};
  const Vector v{cplx(0, 1), 1.0};
  // v* u = conj(i)(1+i) + 2 = (1 - i) + 2
  CHECK(dot(u, v) == cplx(3.0, -1.0));
  CHECK(pair(u, v) == cplx(0, 1) * cplx(1, 1) + 2.0);
}

TEST_CASE("hermitian_eigen on trivial inputs") {
  const EigenSystem id = hermitian_eigen(Matrix::identity(2));
  CHECK(id.values == std::vector<double>{1.0, 1.0});
  CHECK(testing::max_diff(id.vectors, Matrix::identity(2)) == 0.0);

  const EigenSystem d = hermitian_eigen(Matrix::diag({-2.0, -1.0}));
  CHECK(d.values == std::vector<double>{-2.0, -1.0});
  CHECK(testing::max_diff(d.vectors, Matrix::identity(2)) == 0.0);
}

TEST_CASE("hermitian_eigen residual on random 8x8") {
  CounterRng rng(11);
  const Matrix m = testing::random_hermitian(rng, 8);
  const EigenSystem es = hermitian_eigen(m);
  const Matrix lam = Matrix::diag(es.values);
  CHECK(norm(m * es.vectors - es.vectors * lam) <= 1e-11 * norm(m));
  CHECK(std::is_sorted(es.values.begin(), es.values.end()));
}

TEST_CASE("hermitian_eigen errors") {
  try {
    hermitian_eigen(Matrix(2, 3));
    FAIL("expected NotSquare");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSquare);
  }
  try {
    hermitian_eigen(Matrix{{1.0, 2.0}, {0.0, 1.0}});
    FAIL("expected NotHermitian");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotHermitian);
  }
}

TEST_CASE("property: eigen reconstruction and orthonormality") {
  CounterRng rng(0x5eed);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = testing::random_dim(rng, 12);
    Matrix m = testing::random_hermitian(rng, n);
    if (trial % 5 == 0) {
      // Force repeated eigenvalues by conjugating a diagonal with duplicates.
      std::vector<double> d(n, 1.0);
      d[0] = -2.0;
      const Matrix q = testing::random_unitary(rng, n);
      m = hermitian_part(q * Matrix::diag(d) * q.adjoint());
    }
    const EigenSystem es = hermitian_eigen(m);
    const Matrix& v = es.vectors;
    INFO("trial " << trial << " n " << n);
    CHECK(norm(v * Matrix::diag(es.values) * v.adjoint() - m) <= 1e-11 * n * std::max(1.0, norm(m, NormKind::operator2)));
    CHECK(norm(v.adjoint() * v - Matrix::identity(n)) <= 1e-12 * n);
  }
}

TEST_CASE("svd trivial inputs") {
  const SvdResult z = svd(Matrix(3, 3));
  for (double s : z.sigma) CHECK(s == 0.0);
  CHECK(norm(z.right.adjoint() * z.right - Matrix::identity(3)) < 1e-14);

  const SvdResult d = svd(Matrix::diag({3.0, 4.0}));
  REQUIRE(d.sigma.size() == 2);
  CHECK(d.sigma[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.sigma[1] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("svd of random 5x3 matches eigenvalues of M*M") {
  CounterRng rng(3);
  const Matrix m = rng.matrix(5, 3);
  const SvdResult s = svd(m);
  REQUIRE(s.sigma.size() == 3);
  const EigenSystem es = hermitian_eigen(hermitian_part(m.adjoint() * m));
  for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(s.sigma[k] * s.sigma[k] - es.values[2 - k]) <= 1e-10);
  Matrix sig(3, 3);
  for (std::size_t k = 0; k < 3; ++k) sig(k, k) = s.sigma[k];
  CHECK(norm(s.left * sig * s.right.adjoint() - m) <= 1e-13 * norm(m));
}

TEST_CASE("property: svd agrees with eigen on PSD and reconstructs wide/tall/deficient inputs") {
  CounterRng rng(0xabc);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = testing::random_dim(rng, 10);
    const Matrix r = random_matrix(rng, n);
    const Matrix psd = hermitian_part(r * r.adjoint());
    const SvdResult s = svd(psd);
    const EigenSystem es = hermitian_eigen(psd);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(s.sigma[k] - std::abs(es.values[n - 1 - k])) <= 1e-10);

    const std::size_t rows = testing::random_dim(rng, 8), cols = testing::random_dim(rng, 8);
    const std::size_t rank = std::min({rows, cols, testing::random_dim(rng, 4)});
    const Matrix m = rng.matrix(rows, rank) * rng.matrix(rank, cols);
    const SvdResult t = svd(m);
    const std::size_t k = std::min(rows, cols);
    Matrix sig(k, k);
    for (std::size_t i = 0; i < k; ++i) sig(i, i) = t.sigma[i];
    INFO("trial " << trial << " shape " << rows << "x" << cols << " rank " << rank);
    CHECK(norm(t.left * sig * t.right.adjoint() - m) <= 1e-12 * (1.0 + norm(m)));
    CHECK(norm(t.left.adjoint() * t.left - Matrix::identity(k)) <= 1e-12 * k);
    CHECK(norm(t.right.adjoint() * t.right - Matrix::identity(k)) <= 1e-12 * k);
    CHECK(std::is_sorted(t.sigma.rbegin(), t.sigma.rend()));
  }
}

TEST_CASE("solve") {
  const Vector b{1.0, cplx(2.0, -1.0)};
  CHECK(solve(Matrix::identity(2), b) == b);
  const Vector x = solve(Matrix::diag({2.0, 4.0}), Vector{2.0, 4.0});
  CHECK(x == Vector{1.0, 1.0});

  CounterRng rng(17);
  const Matrix m = random_matrix(rng, 16) + 4.0 * Matrix::identity(16);
  const Vector rhs = rng.vector(16);
  const Vector sol = solve(m, rhs);
  CHECK(vnorm(m * sol - rhs) <= 1e-10 * (norm(m, NormKind::operator2) * vnorm(sol) + vnorm(rhs)));

  try {
    solve(Matrix{{1.0, 2.0}, {2.0, 4.0}}, b);
    FAIL("expected Singular");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
}

TEST_CASE("property: solve round-trips up to condition 1e8") {
  CounterRng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = testing::random_dim(rng, 12);
    const Matrix q1 = testing::random_unitary(rng, n), q2 = testing::random_unitary(rng, n);
    std::vector<double> d(n);
    const double cond = std::pow(10.0, 8.0 * rng.uniform());
    for (std::size_t i = 0; i < n; ++i) d[i] = n == 1 ? 1.0 : std::pow(cond, -static_cast<double>(i) / (n - 1));
    const Matrix m = q1 * Matrix::diag(d) * q2;
    const Vector b = rng.vector(n);
    const Vector x = solve(m, b);
    CHECK(vnorm(m * x - b) <= 1e-10 * (norm(m, NormKind::operator2) * vnorm(x) + vnorm(b)));
  }
}

TEST_CASE("norms") {
  CHECK(vnorm(Vector{3.0, 4.0}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(vnorm(Vector{1.0, 1.0, 1.0, 1.0}, 1.0) == 4.0);
  CHECK(vnorm(Vector{1.0, -7.0}, std::numeric_limits<double>::infinity()) == 7.0);
  CHECK(vnorm(Vector(3), 3.0) == 0.0);
  try {
    vnorm(Vector{1.0}, 0.5);
    FAIL("expected InvalidP");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidP);
  }

  CounterRng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = testing::random_dim(rng, 10);
    const Matrix a = random_matrix(rng, n);
    const double op = norm(a, NormKind::operator2);
    CHECK(op >= norm(a) / std::sqrt(static_cast<double>(n)) * (1.0 - 1e-14));
    CHECK(op <= norm(a) * (1.0 + 1e-14));
  }
  // Scaling guards against overflow in the sum of squares.
  CHECK(vnorm(Vector{1e200, 1e200}) == doctest::Approx(std::sqrt(2.0) * 1e200));
}

TEST_CASE("cholesky and triangular solves") {
  CounterRng rng(21);
  const Matrix r = random_matrix(rng, 6);
  const Matrix g = hermitian_part(r * r.adjoint() + Matrix::identity(6));
  const Matrix l = cholesky(g);
  CHECK(norm(l * l.adjoint() - g) <= 1e-14 * norm(g) * 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) CHECK(l(i, j) == cplx{});
  const Matrix b = rng.matrix(6, 2);
  CHECK(norm(l * triangular_solve(l, b, false) - b) <= 1e-13);
  CHECK(norm(l.adjoint() * triangular_solve(l, b, true) - b) <= 1e-13);

  try {
    cholesky(Matrix::diag({1.0, -1.0}));
    FAIL("expected SingularGram");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularGram);
  }
}
