#include "dst/banach_adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dst/error.hpp"
#include "dst/linalg.hpp"
#include "dst/rng.hpp"

namespace dst {

namespace {

double rel_diff(const Matrix& a, const Matrix& b) { return norm(a - b) / (1.0 + norm(b)); }

SpectralMeasure pull_back(const GramMetric& g, const SpectralMeasure& e) {
  SpectralMeasure out;
  out.dim = e.dim;
  for (const auto& a : e.atoms) out.atoms.push_back({a.lambda, g.from_euclidean(a.P), a.multiplicity});
  return out;
}

}  // namespace

BanachOperator BanachOperator::on(const KuelbsEmbedding& k, Matrix m) {
  if (!m.square() || m.rows() != k.space.dim())
    throw Error(ErrorKind::DimensionMismatch, "operator does not match the embedding dimension");
  return {std::move(m), k.space, std::make_shared<const GramMetric>(k.metric)};
}

BanachOperator BanachOperator::with_metric(GramMetric g, double p, Matrix m) {
  if (!m.square() || m.rows() != g.dim())
    throw Error(ErrorKind::DimensionMismatch, "operator does not match the metric dimension");
  LpSpace sp(g.dim(), p);
  return {std::move(m), sp, std::make_shared<const GramMetric>(std::move(g))};
}

AdjointPair adjoint(const BanachOperator& a) {
  return {a, a.metric->adjoint(a.M), a.metric->gram()};
}

double contract_residual(const GramMetric& g, const Matrix& a, const Matrix& astar, int random_pairs) {
  const std::size_t n = g.dim();
  double worst = 0.0;
  auto check = [&](const Vector& u, const Vector& v) {
    const Vector au = a * u;
    const Vector asv = astar * v;
    const cplx lhs = g.inner(au, v);
    const cplx rhs = g.inner(u, asv);
    const double scale = g.norm(au) * g.norm(v) + g.norm(u) * g.norm(asv);
    const double diff = std::abs(lhs - rhs);
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) check(Vector::basis(n, i), Vector::basis(n, j));
  CounterRng rng(0xad7, n);
  for (int k = 0; k < random_pairs; ++k) {
    const Vector u = rng.vector(n);
    const Vector v = rng.vector(n);
    check(u, v);
  }
  return worst;
}

double involution_residual(const AdjointPair& p) {
  return rel_diff(p.A.metric->adjoint(p.Astar), p.A.M);
}

AdjointAxioms adjoint_axioms(const AdjointPair& p, int random_probes) {
  const GramMetric& g = *p.A.metric;
  const std::size_t n = g.dim();
  const Matrix b = p.Astar * p.A.M;

  double amin = std::numeric_limits<double>::infinity();
  auto probe = [&](const Vector& u) {
    const double uu = g.inner(u, u).real();
    if (uu > 0.0) amin = std::min(amin, g.inner(b * u, u).real() / uu);
  };
  for (std::size_t k = 0; k < n; ++k) probe(g.from_euclidean(Vector::basis(n, k)));
  CounterRng rng(0xacc, n);
  for (int k = 0; k < random_probes; ++k) probe(rng.vector(n));
  const EigenSystem es = hermitian_eigen(hermitian_part(g.to_euclidean(b)));
  for (std::size_t k = 0; k < n; ++k) probe(g.from_euclidean(es.vectors.column(k)));

  AdjointAxioms ax{};
  ax.accretive_min = amin;
  ax.natural_selfadjoint_residual = norm(g.adjoint(b) - b) / (1.0 + norm(b));
  ax.inverse_norm = g.op_norm(inverse(Matrix::identity(n) + b));
  return ax;
}

HPolar h_polar(const BanachOperator& a, const Tolerances& tol) {
  const GramMetric& g = *a.metric;
  PolarDecomposition pd = polar_decompose(g.to_euclidean(a.M), tol);
  HPolar hp{g.from_euclidean(pd.U), g.from_euclidean(pd.T), g.from_euclidean(pd.Tbar), pd.rank, std::move(pd)};
  return hp;
}

ResolventProbe baire_approximant(const BanachOperator& a, const HPolar& hp, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw Error(ErrorKind::ConfigError, "lambda must be positive and finite");
  const std::size_t n = a.M.rows();
  const Matrix id = Matrix::identity(n);
  ResolventProbe r;
  r.lambda = lambda;
  r.R = inverse(lambda * id + hp.T);
  r.Alambda = lambda * (a.M * r.R);
  r.resolvent_norm = a.metric->op_norm(lambda * r.R);

  const Matrix ur = hp.U * r.R;
  const Matrix stated = (lambda * lambda) * ur - lambda * hp.U;
  const Matrix corrected = lambda * hp.U - (lambda * lambda) * ur;
  // Both sides are differences of terms of size lambda*||U||; rounding scales with that, not with ||A_lambda||.
  const double scale = 1.0 + lambda * norm(hp.U);
  r.identity_residual_stated = norm(r.Alambda - stated) / scale;
  r.identity_residual = norm(r.Alambda - corrected) / scale;

  const Matrix rbar = inverse(lambda * id + hp.Tbar);
  r.intertwining_residual = norm(a.M * r.R - rbar * a.M) / (1.0 + norm(a.M));
  return r;
}

ResolventProbe baire_approximant(const BanachOperator& a, double lambda, const Tolerances& tol) {
  return baire_approximant(a, h_polar(a, tol), lambda);
}

std::vector<BaireRow> baire_convergence_study(const BanachOperator& a, const std::vector<Vector>& phis,
                                              const std::vector<double>& lambdas, const Tolerances& tol) {
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) throw Error(ErrorKind::ConfigError, "lambdas must be positive");
    if (k > 0 && !(lambdas[k] > lambdas[k - 1])) throw Error(ErrorKind::ConfigError, "lambdas must ascend");
  }
  const GramMetric& g = *a.metric;
  const HPolar hp = h_polar(a, tol);
  std::vector<BaireRow> rows;
  for (double lam : lambdas) {
    const ResolventProbe probe = baire_approximant(a, hp, lam);
    BaireRow row{lam, 0.0, 0.0, 0.0, true, 0.0};
    for (const Vector& phi : phis) {
      const Vector aphi = a.M * phi;
      const Vector err = probe.Alambda * phi - aphi;
      const double e_h = g.norm(err);
      const double b = g.norm(hp.Tbar * aphi) / lam;
      row.max_error = std::max(row.max_error, e_h);
      row.bound = std::max(row.bound, b);
      row.max_error_B = std::max(row.max_error_B, vnorm(err, a.space.p()));
      if (e_h > b * (1.0 + 1e-6)) row.within_bound = false;
    }
    if (!rows.empty() && rows.back().max_error > 0.0) row.rate = row.max_error / rows.back().max_error;
    rows.push_back(row);
  }
  return rows;
}

double riesz_thorin_bound(const Matrix& m, double p) {
  double c1 = 0.0, cinf = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    c1 = std::max(c1, s);
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
    cinf = std::max(cinf, s);
  }
  return std::pow(c1, 1.0 / p) * std::pow(cinf, 1.0 - 1.0 / p);
}

BanachSpectralReport banach_deformed_spectral(const BanachOperator& a, const KuelbsEmbedding* embedding,
                                              const std::optional<Vector>& phi, const Tolerances& tol) {
  const GramMetric& g = *a.metric;
  HPolar hp = h_polar(a, tol);
  const SpectralMeasure e = pull_back(g, spectral_measure(hp.euclidean.T, tol));
  DeformedSpectralMeasure f = deform(hp.U, e, tol);
  const double smax = hp.euclidean.sigma.empty() ? 0.0 : hp.euclidean.sigma.front();
  f.zero_threshold = hp.euclidean.tol * smax;

  const Matrix residual = reconstruct(f) - a.M;
  const double rt_a = riesz_thorin_bound(a.M, a.space.p());
  const double rt_res = riesz_thorin_bound(residual, a.space.p());
  BanachSpectralReport rep{std::move(f), std::move(hp), rt_a > 0.0 ? rt_res / rt_a : rt_res,
                           norm(residual) / (1.0 + norm(a.M)), std::nullopt};
  if (embedding && phi) {
    const SteadmanFunctional s = steadman(*embedding, *phi);
    rep.steadman_form = quadratic_form(rep.F, *phi, Pairing::functional(s.coeffs));
  }
  return rep;
}

Matrix dirichlet_laplacian(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::BadGrid, "grid needs n >= 2 interior points");
  const double h = 1.0 / static_cast<double>(n + 1);
  const double s = 1.0 / (h * h);
  Matrix j0(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    j0(i, i) = 2.0 * s;
    if (i > 0) j0(i, i - 1) = -s;
    if (i + 1 < n) j0(i, i + 1) = -s;
  }
  return j0;
}

LaplacianReport dirichlet_laplacian_demo(std::size_t n, double r, const Matrix& a) {
  if (n < 2) throw Error(ErrorKind::BadGrid, "grid needs n >= 2 interior points");
  if (!(r > 1.0) || std::isinf(r)) throw Error(ErrorKind::BadGrid, "r must lie in (1, inf)");
  if (!a.square() || a.rows() != n) throw Error(ErrorKind::BadGrid, "operator must be n x n on the grid interior");

  const Matrix j0 = dirichlet_laplacian(n);
  const Matrix j0inv = hermitian_part(inverse(j0));
  GramMetric g = GramMetric::from_gram(j0inv);

  LaplacianReport rep;
  rep.n = n;
  rep.r = r;
  rep.J0 = j0;
  rep.Astar = j0 * a.adjoint() * j0inv;
  rep.contract_residual = contract_residual(g, a, rep.Astar);
  const Matrix back = j0 * rep.Astar.adjoint() * j0inv;
  rep.involution_residual = rel_diff(back, a);
  rep.formula_residual = rel_diff(rep.Astar, g.adjoint(a));

  const AdjointPair pair{BanachOperator::with_metric(std::move(g), r, a), rep.Astar, j0inv};
  rep.axioms = adjoint_axioms(pair);
  rep.norm_A_r = lp_operator_norm(a, r).value;
  rep.norm_Astar_r = lp_operator_norm(rep.Astar, r).value;
  return rep;
}

}  // namespace dst
