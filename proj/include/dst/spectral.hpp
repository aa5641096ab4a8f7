#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "dst/config.hpp"
#include "dst/gexpr.hpp"
#include "dst/matrix.hpp"
#include "dst/polar.hpp"

namespace dst {

/// One atom (lambda_i, P_i) of a projection-valued measure.
struct SpectralAtom {
  double lambda;
  Matrix P;
  std::size_t multiplicity;
};

/// Finite projection-valued measure: sum_i P_i = I, P_i P_j = delta_ij P_i,
/// lambdas strictly increasing.
struct SpectralMeasure {
  std::vector<SpectralAtom> atoms;
  std::size_t dim = 0;
};

/// Atom (lambda_i, dF_i = U P_i) of a deformed measure.
struct DeformedAtom {
  double lambda;
  Matrix dF;
};

/// F = U E. `atoms[i]` pairs with `source.atoms[i]`; atoms whose lambda is
/// numerically zero stay in the list (dF ~ 0) but are excluded from
/// `support()`.
struct DeformedSpectralMeasure {
  std::vector<DeformedAtom> atoms;
  Matrix U;
  SpectralMeasure source;
  /// lambda <= zero_threshold is treated as the kernel cluster.
  double zero_threshold = 0.0;

  /// Lambdas of atoms with lambda > zero_threshold and dF != 0, ascending.
  std::vector<double> support() const;
};

/// Eigen-decomposes a Hermitian matrix and merges eigenvalues whose
/// consecutive gap is <= tol.cluster * (1 + max|lambda|). Each merged atom
/// carries the mean of its eigenvalues.
SpectralMeasure spectral_measure(const Matrix& h, const Tolerances& tol = {});

/// F = U E. Atoms with -neg_tol <= lambda < 0 are clamped to 0; anything
/// further below zero throws NegativeSupport.
DeformedSpectralMeasure deform(const Matrix& u, const SpectralMeasure& e, const Tolerances& tol = {});

/// polar_decompose -> spectral_measure(T) -> deform(U, .).
DeformedSpectralMeasure deformed_of(const Matrix& a, const Tolerances& tol = {});
/// Same pipeline starting from an existing decomposition.
DeformedSpectralMeasure deformed_of(const PolarDecomposition& p, const Tolerances& tol = {});

using ScalarFunction = std::function<cplx(double)>;

/// Wraps a parsed expression as a scalar function (EvalError propagates).
ScalarFunction as_function(const GExpr& g);

/// sum_i g(lambda_i) dF_i, accumulated in ascending-lambda order.
Matrix integrate(const ScalarFunction& g, const DeformedSpectralMeasure& f);
Matrix integrate(const ScalarFunction& g, const SpectralMeasure& e);
Vector integrate(const ScalarFunction& g, const DeformedSpectralMeasure& f, const Vector& phi);
Vector integrate(const ScalarFunction& g, const SpectralMeasure& e, const Vector& phi);

/// How the vector dF_i phi is paired to a scalar.
///   standard:   (x, phi)   = phi* x
///   gram:       (x, phi)_G = phi* G x
///   functional: psi(x)     = sum_k c_k x_k   (e.g. a Steadman functional S_phi)
struct Pairing {
  enum class Kind { standard, gram, functional };
  Kind kind = Kind::standard;
  Matrix gram;
  Vector coeffs;

  static Pairing standard() { return {}; }
  static Pairing with_gram(Matrix g) { return {Kind::gram, std::move(g), {}}; }
  static Pairing functional(Vector c) { return {Kind::functional, {}, std::move(c)}; }
};

struct QuadraticForm {
  /// lambda_i^2 * (dF_i phi, psi), one per atom, in atom order.
  std::vector<cplx> terms;
  cplx sum;
};

QuadraticForm quadratic_form(const DeformedSpectralMeasure& f, const Vector& phi, const Pairing& pairing);
QuadraticForm quadratic_form(const SpectralMeasure& e, const Vector& phi, const Pairing& pairing);

/// Total variation sum_i ||dM_i phi||_2 of the atomized vector measure.
double variation(const DeformedSpectralMeasure& f, const Vector& phi);
double variation(const SpectralMeasure& e, const Vector& phi);

/// sum_i lambda_i P_i (resp. dF_i).
Matrix reconstruct(const SpectralMeasure& e);
Matrix reconstruct(const DeformedSpectralMeasure& f);

}  // namespace dst
