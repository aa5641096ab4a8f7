#include "doctest.h"

#include <cmath>

#include "dst/banach_adjoint.hpp"
#include "dst/gexpr.hpp"
#include "dst/polar.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace dst;
using testing::rel_diff;

namespace {

BanachOperator euclidean_op(const Matrix& a, double p = 2.0) {
  return BanachOperator::with_metric(GramMetric::euclidean(a.rows()), p, a);
}

Matrix random_pd(CounterRng& rng, std::size_t n) {
  const Matrix r = testing::random_matrix(rng, n);
  return hermitian_part(r * r.adjoint() + 0.2 * Matrix::identity(n));
}

KuelbsEmbedding embedding(std::size_t n, double p, std::uint64_t seed) {
  KuelbsConfig cfg;
  cfg.dim = n;
  cfg.p = p;
  cfg.extra_seeds = n;
  cfg.seed = seed;
  return make_kuelbs(cfg);
}

Matrix upper_shift(std::size_t n) {
  Matrix s(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) s(i, i + 1) = 1.0;
  return s;
}

}  // namespace

TEST_CASE("adjoint in the Hilbert case is the conjugate transpose") {
  CounterRng rng(81);
  const Matrix h = testing::random_hermitian(rng, 4);
  const AdjointPair p = adjoint(BanachOperator::with_metric(GramMetric::from_gram(3.0 * Matrix::identity(4)), 2.0, h));
  CHECK(testing::max_diff(p.Astar, h) < 1e-15);
}

TEST_CASE("adjoint for G = diag(1,4) and the nilpotent shift") {
  const Matrix a{{0.0, 1.0}, {0.0, 0.0}};
  const GramMetric g = GramMetric::from_gram(Matrix::diag({1.0, 4.0}));
  const AdjointPair p = adjoint(BanachOperator::with_metric(g, 3.0, a));
  CHECK(testing::max_diff(p.Astar, Matrix{{0.0, 0.0}, {0.25, 0.0}}) < 1e-16);
  // Ground truth is the contract on basis pairs: (A e_i, e_j)_H = (e_i, A* e_j)_H.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const Vector ei = Vector::basis(2, i), ej = Vector::basis(2, j);
      CHECK(std::abs(g.inner(a * ei, ej) - g.inner(ei, p.Astar * ej)) < 1e-16);
    }
}

TEST_CASE("non positive-definite Gram matrices are rejected") {
  CHECK_KIND(GramMetric::from_gram(Matrix::diag({1.0, -1.0})), ErrorKind::SingularGram);
  CHECK_KIND(GramMetric::from_gram(Matrix{{1.0, 0.5}, {0.0, 1.0}}), ErrorKind::SingularGram);
  CHECK_KIND(BanachOperator::with_metric(GramMetric::euclidean(3), 2.0, Matrix::identity(2)), ErrorKind::DimensionMismatch);
}

TEST_CASE("property: contract and involution with random PD G") {
  CounterRng rng(0xc0a7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testing::random_dim(rng, 10);
    const Matrix a = testing::random_matrix(rng, n);
    const AdjointPair p = adjoint(BanachOperator::with_metric(GramMetric::from_gram(random_pd(rng, n)), 3.0, a));
    INFO("trial " << trial << " n " << n);
    CHECK(contract_residual(*p.A.metric, a, p.Astar) <= 1e-10);
    CHECK(involution_residual(p) <= 1e-10);
  }
}

TEST_CASE("adjoint axioms on fixed inputs") {
  const AdjointAxioms zero = adjoint_axioms(adjoint(euclidean_op(Matrix(3, 3))));
  CHECK(zero.accretive_min == 0.0);
  CHECK(zero.inverse_norm == doctest::Approx(1.0).epsilon(1e-15));

  const AdjointAxioms id = adjoint_axioms(
      adjoint(BanachOperator::with_metric(GramMetric::from_gram(2.0 * Matrix::identity(3)), 2.0, Matrix::identity(3))));
  CHECK(id.accretive_min == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(id.inverse_norm == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(id.natural_selfadjoint_residual == 0.0);
}

TEST_CASE("property: adjoint axioms in Kuelbs metrics") {
  CounterRng rng(0xa810);
  for (double p : {1.5, 2.0, 3.0, 4.0})
    for (std::size_t n : {2u, 4u, 8u}) {
      const KuelbsEmbedding k = embedding(n, p, n + 17);
      for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = testing::random_matrix(rng, n);
        const AdjointAxioms ax = adjoint_axioms(adjoint(BanachOperator::on(k, a)));
        INFO("p " << p << " n " << n);
        CHECK(ax.accretive_min >= -1e-10);
        CHECK(ax.natural_selfadjoint_residual <= 1e-10);
        CHECK(ax.inverse_norm <= 1.0 + 1e-10);
      }
    }
}

TEST_CASE("H-polar") {
  CounterRng rng(91);
  const Matrix a = testing::random_matrix(rng, 5);
  const HPolar scaled = h_polar(BanachOperator::with_metric(GramMetric::from_gram(7.0 * Matrix::identity(5)), 2.0, a));
  const PolarDecomposition e = polar_decompose(a);
  CHECK(rel_diff(scaled.U, e.U) <= 1e-11);
  CHECK(rel_diff(scaled.T, e.T) <= 1e-11);

  // H-selfadjoint negative definite: T = -A and U = -I.
  const KuelbsEmbedding k = embedding(4, 3.0, 5);
  const Matrix neg = k.metric.from_euclidean(-1.0 * random_pd(rng, 4));
  const HPolar hn = h_polar(BanachOperator::on(k, neg));
  CHECK(rel_diff(hn.T, -1.0 * neg) <= 1e-10);
  CHECK(rel_diff(hn.U, -1.0 * Matrix::identity(4)) <= 1e-10);

  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = testing::random_dim(rng, 8);
    const Matrix m = testing::random_matrix(rng, n);
    const HPolar hp = h_polar(BanachOperator::on(embedding(n, 1.5 + rng.uniform() * 3.0, trial), m));
    CHECK(rel_diff(hp.U * hp.T, m) <= 1e-10);
    CHECK(rel_diff(hp.Tbar * hp.U, m) <= 1e-10);
  }
}

TEST_CASE("Baire approximant worked examples") {
  const ResolventProbe big = baire_approximant(euclidean_op(Matrix::identity(3)), 1e8);
  CHECK(norm(big.Alambda - Matrix::identity(3)) <= 1e-7);

  const double lam = 10.0;
  const ResolventProbe d = baire_approximant(euclidean_op(Matrix::diag({-2.0, -1.0})), lam);
  const Matrix expected = Matrix::diag({lam * -2.0 / (lam + 2.0), lam * -1.0 / (lam + 1.0)});
  CHECK(testing::max_diff(d.Alambda, expected) < 1e-15);

  const ResolventProbe o = baire_approximant(euclidean_op(oracle::kA), oracle::kBaireLambda);
  CHECK(testing::max_diff(o.Alambda, oracle::kBaireAlambda) < 1e-13);

  CHECK_KIND(baire_approximant(euclidean_op(Matrix::identity(2)), 0.0), ErrorKind::ConfigError);
  CHECK_KIND(baire_approximant(euclidean_op(Matrix::identity(2)), -1.0), ErrorKind::ConfigError);
}

TEST_CASE("resolvent identity: the corrected sign holds, the transposed sign does not") {
  CounterRng rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const BanachOperator op = BanachOperator::on(embedding(n, 3.0, trial), testing::random_matrix(rng, n));
    for (double lam : {1e1, 1e2, 1e3, 1e4}) {
      const ResolventProbe p = baire_approximant(op, lam);
      CHECK(p.identity_residual <= 1e-10);
      // lambda^2 U R - lambda U equals -A_lambda, so it misses by 2 ||A_lambda||.
      CHECK(p.identity_residual_stated > 1e6 * std::max(p.identity_residual, 1e-16));
      CHECK(p.resolvent_norm <= 1.0 + 1e-10);
      CHECK(p.intertwining_residual <= 1e-10);
    }
  }
}

TEST_CASE("Baire convergence study") {
  const std::vector<double> lams{1e1, 1e2, 1e3, 1e4};
  const std::vector<Vector> phis{Vector::basis(3, 0), Vector{1.0, 1.0, 1.0}};
  for (const auto& row : baire_convergence_study(euclidean_op(Matrix(3, 3)), phis, lams)) {
    CHECK(row.max_error == 0.0);
    CHECK(row.within_bound);
  }
  CHECK_KIND(baire_convergence_study(euclidean_op(Matrix(3, 3)), phis, {1e2, 1e1}), ErrorKind::ConfigError);
  CHECK_KIND(baire_convergence_study(euclidean_op(Matrix(3, 3)), phis, {-1.0}), ErrorKind::ConfigError);

  CounterRng rng(111);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Matrix a = testing::random_matrix(rng, n);
    std::vector<Vector> ps;
    for (int j = 0; j < 3; ++j) ps.push_back(rng.vector(n));
    const auto rows = baire_convergence_study(euclidean_op(a), ps, lams);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      CHECK(rows[j].within_bound);
      CHECK(rows[j].max_error <= rows[j].bound * (1.0 + 1e-6));
      // O(1/lambda): each decade cuts the error tenfold, within a factor 2.
      if (j > 0) {
        CHECK(rows[j].rate >= 0.05);
        CHECK(rows[j].rate <= 0.2);
      }
    }
  }
}

TEST_CASE("Banach deformed spectral theorem") {
  CounterRng rng(121);
  const Matrix a = testing::random_matrix(rng, 4);
  const BanachSpectralReport hil = banach_deformed_spectral(euclidean_op(a));
  const DeformedSpectralMeasure f = deformed_of(a);
  CHECK(hil.F.support().size() == f.support().size());
  for (std::size_t k = 0; k < f.atoms.size(); ++k) {
    CHECK(hil.F.atoms[k].lambda == doctest::Approx(f.atoms[k].lambda).epsilon(1e-12));
    CHECK(rel_diff(hil.F.atoms[k].dF, f.atoms[k].dF) <= 1e-12);
  }

  const KuelbsEmbedding k4 = build_kuelbs({Vector::basis(2, 0), Vector::basis(2, 1)}, {0.5, 0.5}, LpSpace(2, 4.0));
  const BanachSpectralReport d = banach_deformed_spectral(BanachOperator::on(k4, Matrix::diag({-2.0, -1.0})));
  for (double s : d.F.support()) CHECK(s >= 0.0);
  CHECK(d.reconstruction_error_p <= 1e-10);

  const KuelbsEmbedding k = embedding(5, 3.0, 9);
  const Matrix m = testing::random_matrix(rng, 5);
  const Vector phi = rng.vector(5);
  const BanachSpectralReport r = banach_deformed_spectral(BanachOperator::on(k, m), &k, phi);
  const Matrix sq = integrate(as_function(parse_gexpr("lambda^2")), r.F);
  CHECK(rel_diff(sq, r.polar.U * r.polar.T * r.polar.T) <= 1e-10);
  CHECK(r.reconstruction_error_p <= 1e-8);
  REQUIRE(r.steadman_form.has_value());
  CHECK(r.steadman_form->terms.size() == r.F.atoms.size());
}

TEST_CASE("Dirichlet Laplacian demo") {
  const LaplacianReport id = dirichlet_laplacian_demo(8, 3.0, Matrix::identity(8));
  CHECK(rel_diff(id.Astar, Matrix::identity(8)) <= 1e-14);

  const Matrix lap = dirichlet_laplacian(8);
  CHECK(lap(0, 0).real() == doctest::Approx(2.0 * 81.0));
  CHECK(lap(0, 1).real() == doctest::Approx(-81.0));
  const LaplacianReport self = dirichlet_laplacian_demo(8, 3.0, lap);
  CHECK(rel_diff(self.Astar, lap) <= 1e-12);

  const Matrix s = upper_shift(8);
  const LaplacianReport sh = dirichlet_laplacian_demo(8, 3.0, s);
  CHECK(rel_diff(sh.Astar, lap * s.adjoint() * inverse(lap)) <= 1e-12);
  CHECK(sh.contract_residual <= 1e-10);
  CHECK(sh.involution_residual <= 1e-10);

  for (std::size_t n : {8u, 32u}) {
    const LaplacianReport r = dirichlet_laplacian_demo(n, 3.0, dirichlet_laplacian(n));
    CHECK(r.contract_residual <= 1e-9);
    CHECK(r.axioms.accretive_min >= -1e-9);
    CHECK(r.axioms.natural_selfadjoint_residual <= 1e-9);
    CHECK(r.axioms.inverse_norm <= 1.0 + 1e-9);
  }

  CHECK_KIND(dirichlet_laplacian_demo(1, 3.0, Matrix::identity(1)), ErrorKind::BadGrid);
  CHECK_KIND(dirichlet_laplacian_demo(4, 1.0, Matrix::identity(4)), ErrorKind::BadGrid);
  CHECK_KIND(dirichlet_laplacian_demo(4, 3.0, Matrix::identity(5)), ErrorKind::BadGrid);
}
