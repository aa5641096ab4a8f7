#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dst/matrix.hpp"
#include "dst/metric.hpp"

namespace dst {

/// B = l^p_n with 1 < p < infinity.
class LpSpace {
 public:
  /// Throws InvalidP unless 1 < p < infinity, DimensionMismatch for dim 0.
  LpSpace(std::size_t dim, double p);

  std::size_t dim() const noexcept { return dim_; }
  double p() const noexcept { return p_; }
  /// Conjugate exponent p / (p - 1).
  double q() const noexcept { return p_ / (p_ - 1.0); }

  double norm(const Vector& u) const;
  /// Norm of a functional given by its dual-basis coefficients.
  double dual_norm(const Vector& coeffs) const;

 private:
  std::size_t dim_;
  double p_;
};

/// F_u with <u, F_u> = ||u||_p^2 = ||F_u||_q^2.
struct DualityFunctional {
  Vector coeffs;
  Vector source;
  LpSpace space;

  cplx operator()(const Vector& v) const { return pair(v, coeffs); }
};

/// coeffs_i = ||u||_p^{2-p} |u_i|^{p-1} conj(sgn u_i). Throws ZeroVector.
DualityFunctional canonical_duality_map(const Vector& u, const LpSpace& sp);

/// Hilbert structure (u, v)_H = sum_n t_n fhat_n(u) conj(fhat_n(v)) on B,
/// with fhat_n the unit-norm duality functionals of the seeds u_n.
struct KuelbsEmbedding {
  LpSpace space;
  std::vector<double> weights;
  std::vector<Vector> seeds;
  /// Normalized functionals fhat_n = f_n / ||f_n||_{B'}, as coefficient vectors.
  std::vector<Vector> functionals;
  /// G with (u, v)_H = v* G u.
  GramMetric metric;
  /// Gram on B': (f, g) = sum_n t_n f(u_n) conj(g(u_n)) = d* dualG c.
  Matrix dual_gram;
  double min_eigenvalue = 0.0;

  const Matrix& G() const noexcept { return metric.gram(); }
};

/// Throws BadWeights (count, positivity, sum != 1 within 1e-12),
/// ZeroVector (a zero seed), DegenerateSeeds (G numerically singular).
KuelbsEmbedding build_kuelbs(const std::vector<Vector>& seeds, const std::vector<double>& weights, const LpSpace& sp);

/// t_n proportional to 2^{-n}, n = 1..count, normalized to sum 1.
std::vector<double> geometric_weights(std::size_t count);

/// Serializable description of an embedding: canonical basis seeds plus
/// `extra_seeds` random ones drawn from CounterRng(seed).
struct KuelbsConfig {
  std::size_t dim = 4;
  double p = 2.0;
  std::size_t extra_seeds = 0;
  std::uint64_t seed = 0;
  /// Empty means geometric_weights(dim + extra_seeds).
  std::vector<double> weights;
};

KuelbsEmbedding make_kuelbs(const KuelbsConfig& cfg);

cplx h_inner(const KuelbsEmbedding& k, const Vector& u, const Vector& v);
double h_norm(const KuelbsEmbedding& k, const Vector& u);
/// Same form evaluated atom-by-atom from the functionals (no Gram matrix).
cplx h_inner_direct(const KuelbsEmbedding& k, const Vector& u, const Vector& v);
/// (f, g) on B' via dual_gram.
cplx dual_inner(const KuelbsEmbedding& k, const Vector& f, const Vector& g);

enum class SteadmanMetric {
  kuelbs,     ///< (v, u) and ||u|| taken in the Kuelbs Hilbert structure
  euclidean,  ///< raw Euclidean (v, u)_2 and ||u||_2
};

/// S_u(v) = (||u||_B^2 / ||u||^2) (v, u), extended to all of B by the same formula.
struct SteadmanFunctional {
  Vector u;
  /// S_u(v) = sum_k coeffs_k v_k.
  Vector coeffs;
  double scale;
  /// ||S_u||_{B'}; only the lower bound ||u||_B is guaranteed.
  double dual_norm;

  cplx operator()(const Vector& v) const { return pair(v, coeffs); }
};

/// Throws ZeroVector.
SteadmanFunctional steadman(const KuelbsEmbedding& k, const Vector& u, SteadmanMetric metric = SteadmanMetric::kuelbs);

enum class NormMethod { exact, ascent, enumeration_ascent };
const char* to_string(NormMethod m) noexcept;

struct LpNormEstimate {
  double value;
  NormMethod method;
};

/// l^p -> l^p operator norm. Monotone nonlinear power ascent (each step
/// cannot decrease ||Ax||_p) from basis vectors, Euclidean singular
/// vectors, `extra_starts` and a few seeded random vectors; for n <= 3 a
/// grid over the complex unit sphere seeds the ascent as well. p = 1, 2
/// and infinity use closed forms.
LpNormEstimate lp_operator_norm(const Matrix& a, double p, const std::vector<Vector>& extra_starts = {});

struct LaxReport {
  bool is_H_selfadjoint;
  double selfadjoint_defect;
  double norm_H;
  double norm_B;
  NormMethod norm_B_method;
  double ratio;
  /// cond(L) * n^{|1/2 - 1/p|}: ||A||_H <= bound * ||A||_B for every A.
  double bound;
};

/// Throws DimensionMismatch.
LaxReport lax_diagnostic(const KuelbsEmbedding& k, const Matrix& a, double selfadjoint_tol = 1e-10);

}  // namespace dst
