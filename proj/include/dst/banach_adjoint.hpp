#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dst/config.hpp"
#include "dst/kuelbs.hpp"
#include "dst/matrix.hpp"
#include "dst/metric.hpp"
#include "dst/polar.hpp"
#include "dst/spectral.hpp"

namespace dst {

/// Coordinate matrix of an operator on B = l^p_n together with the Hilbert
/// structure it is extended to.
struct BanachOperator {
  Matrix M;
  LpSpace space;
  std::shared_ptr<const GramMetric> metric;

  /// Throws DimensionMismatch.
  static BanachOperator on(const KuelbsEmbedding& k, Matrix m);
  static BanachOperator with_metric(GramMetric g, double p, Matrix m);
};

/// A* = G^{-1} A^H G, the unique operator with (Au, v)_H = (u, A* v)_H.
struct AdjointPair {
  BanachOperator A;
  Matrix Astar;
  Matrix G;
};

AdjointPair adjoint(const BanachOperator& a);

/// max |(Au, v)_H - (u, A* v)_H| / (||Au||_H ||v||_H + ||u||_H ||A*v||_H)
/// over all basis pairs and `random_pairs` seeded random pairs.
double contract_residual(const GramMetric& g, const Matrix& a, const Matrix& astar, int random_pairs = 100);

/// ||(A*)* - A||_F / (1 + ||A||_F).
double involution_residual(const AdjointPair& p);

struct AdjointAxioms {
  /// min Re(A*A u, u)_H / (u, u)_H over basis sweep, probes and H-eigenvectors.
  double accretive_min;
  /// ||(A*A)* - A*A||_F / (1 + ||A*A||_F).
  double natural_selfadjoint_residual;
  /// ||(I + A*A)^{-1}||_H.
  double inverse_norm;
};

AdjointAxioms adjoint_axioms(const AdjointPair& p, int random_probes = 32);

/// Polar decomposition in the G-metric: U an H-partial isometry, T and Tbar
/// H-selfadjoint and H-positive, A = U T = Tbar U.
struct HPolar {
  Matrix U;
  Matrix T;
  Matrix Tbar;
  std::size_t rank;
  /// Euclidean polar decomposition of L* A L^{-*}.
  PolarDecomposition euclidean;
};

HPolar h_polar(const BanachOperator& a, const Tolerances& tol = {});

/// R = (lambda I + T)^{-1}, A_lambda = lambda A R.
struct ResolventProbe {
  double lambda;
  Matrix R;
  Matrix Alambda;
  /// ||lambda R||_H.
  double resolvent_norm;
  /// ||A_lambda - (lambda^2 U R - lambda U)||_F / (1 + lambda ||U||_F).
  double identity_residual_stated;
  /// ||A_lambda - (lambda U - lambda^2 U R)||_F / (1 + lambda ||U||_F).
  double identity_residual;
  /// ||A R - Rbar A||_F / (1 + ||A||_F), Rbar = (lambda I + Tbar)^{-1}.
  double intertwining_residual;
};

/// Throws ConfigError for lambda <= 0.
ResolventProbe baire_approximant(const BanachOperator& a, double lambda, const Tolerances& tol = {});
ResolventProbe baire_approximant(const BanachOperator& a, const HPolar& hp, double lambda);

struct BaireRow {
  double lambda;
  /// max over phi of ||A_lambda phi - A phi||_H.
  double max_error;
  /// max over phi of ||Tbar A phi||_H / lambda.
  double bound;
  /// max over phi of ||A_lambda phi - A phi||_p (reported only).
  double max_error_B;
  /// Every phi satisfied error <= bound * (1 + 1e-6).
  bool within_bound;
  /// max_error(this) / max_error(previous row); 0 for the first row.
  double rate;
};

/// Rows in schedule order. Throws ConfigError unless lambdas are positive
/// and strictly ascending.
std::vector<BaireRow> baire_convergence_study(const BanachOperator& a, const std::vector<Vector>& phis,
                                              const std::vector<double>& lambdas, const Tolerances& tol = {});

struct BanachSpectralReport {
  DeformedSpectralMeasure F;
  HPolar polar;
  /// Riesz-Thorin bound of ||sum lambda_i dF_i - A||_{p->p}, relative to the same bound for A.
  double reconstruction_error_p;
  double reconstruction_error_fro;
  /// lambda_i^2 S_phi(dF_i phi) per atom, when phi was supplied.
  std::optional<QuadraticForm> steadman_form;
};

/// `embedding` is needed only for the Steadman form.
BanachSpectralReport banach_deformed_spectral(const BanachOperator& a, const KuelbsEmbedding* embedding = nullptr,
                                              const std::optional<Vector>& phi = std::nullopt,
                                              const Tolerances& tol = {});

/// ||M||_1^{1/p} ||M||_inf^{1-1/p} >= ||M||_{p->p}.
double riesz_thorin_bound(const Matrix& m, double p);

/// Second-difference matrix (-1, 2, -1)/h^2 with Dirichlet ends, h = 1/(n+1).
Matrix dirichlet_laplacian(std::size_t n);

struct LaplacianReport {
  std::size_t n;
  double r;
  Matrix J0;
  /// J0 A^H J0^{-1}.
  Matrix Astar;
  /// Adjoint contract in (u, v) = v* J0^{-1} u, the discrete H^{-1} product.
  double contract_residual;
  double involution_residual;
  /// ||J0 A^H J0^{-1} - G^{-1} A^H G||_F / (1 + ||A*||_F) against the generic construction.
  double formula_residual;
  AdjointAxioms axioms;
  double norm_A_r;
  double norm_Astar_r;
};

/// Throws BadGrid (n < 2, r outside (1, inf), A not n x n).
LaplacianReport dirichlet_laplacian_demo(std::size_t n, double r, const Matrix& a);

}  // namespace dst
