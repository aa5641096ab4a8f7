#include "dst/kuelbs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dst/error.hpp"
#include "dst/linalg.hpp"
#include "dst/rng.hpp"

namespace dst {

namespace {

cplx conj_sign(cplx z) {
  const double r = std::abs(z);
  return r == 0.0 ? cplx{} : std::conj(z) / r;
}

// Unit-norm dual direction: |y_i / ||y||_p|^{p-1} conj(sgn y_i). Satisfies
// <y, w> = ||y||_p and ||w||_q = 1.
Vector dual_direction(const Vector& y, double p, double ny) {
  Vector w(y.dim());
  for (std::size_t i = 0; i < y.dim(); ++i) w[i] = std::pow(std::abs(y[i]) / ny, p - 1.0) * conj_sign(y[i]);
  return w;
}

double ascend(const Matrix& a, const Matrix& at, Vector x, double p) {
  const double q = p / (p - 1.0);
  const double nx = vnorm(x, p);
  if (nx == 0.0) return 0.0;
  x *= 1.0 / nx;
  double best = vnorm(a * x, p);
  for (int it = 0; it < 300; ++it) {
    const Vector y = a * x;
    const double ny = vnorm(y, p);
    if (ny == 0.0) break;
    const Vector s = at * dual_direction(y, p, ny);
    const double ns = vnorm(s, q);
    if (ns == 0.0) break;
    x = dual_direction(s, q, ns);
    const double val = vnorm(a * x, p);
    const bool stalled = val <= best * (1.0 + 1e-14);
    best = std::max(best, val);
    if (stalled) break;
  }
  return best;
}

// Points on the complex unit sphere of C^n (n = 2, 3), modulo global phase.
std::vector<Vector> sphere_grid(std::size_t n) {
  std::vector<Vector> pts;
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 2) {
    const int na = 128, nphi = 128;
    for (int i = 0; i <= na; ++i) {
      const double t = 0.5 * std::numbers::pi * i / na;
      for (int j = 0; j < nphi; ++j) {
        const double ph = two_pi * j / nphi;
        pts.push_back(Vector{std::cos(t), std::sin(t) * std::polar(1.0, ph)});
      }
    }
  } else if (n == 3) {
    const int na = 16, nphi = 16;
    for (int i = 0; i <= na; ++i) {
      const double t = 0.5 * std::numbers::pi * i / na;
      for (int j = 0; j <= na; ++j) {
        const double s = 0.5 * std::numbers::pi * j / na;
        for (int k = 0; k < nphi; ++k)
          for (int l = 0; l < nphi; ++l)
            pts.push_back(Vector{std::cos(t), std::sin(t) * std::cos(s) * std::polar(1.0, two_pi * k / nphi),
                                 std::sin(t) * std::sin(s) * std::polar(1.0, two_pi * l / nphi)});
      }
    }
  }
  return pts;
}

}  // namespace

// ---------------------------------------------------------------- LpSpace

LpSpace::LpSpace(std::size_t dim, double p) : dim_(dim), p_(p) {
  if (!(p > 1.0) || std::isinf(p) || std::isnan(p))
    throw Error(ErrorKind::InvalidP, "l^p space needs 1 < p < infinity, got " + std::to_string(p));
  if (dim == 0) throw Error(ErrorKind::DimensionMismatch, "l^p space needs dim >= 1");
}

double LpSpace::norm(const Vector& u) const { return vnorm(u, p_); }
double LpSpace::dual_norm(const Vector& coeffs) const { return vnorm(coeffs, q()); }

DualityFunctional canonical_duality_map(const Vector& u, const LpSpace& sp) {
  if (u.dim() != sp.dim()) throw Error(ErrorKind::DimensionMismatch, "duality map: dimension");
  const double nu = sp.norm(u);
  if (nu == 0.0) throw Error(ErrorKind::ZeroVector, "duality map of the zero vector");
  Vector c = dual_direction(u, sp.p(), nu);
  c *= nu;
  return {std::move(c), u, sp};
}

// ---------------------------------------------------------------- embedding

std::vector<double> geometric_weights(std::size_t count) {
  std::vector<double> w(count);
  double sum = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    w[n] = std::ldexp(1.0, -static_cast<int>(n + 1));
    sum += w[n];
  }
  for (auto& x : w) x /= sum;
  return w;
}

KuelbsEmbedding build_kuelbs(const std::vector<Vector>& seeds, const std::vector<double>& weights, const LpSpace& sp) {
  if (seeds.empty()) throw Error(ErrorKind::DegenerateSeeds, "no seeds");
  if (weights.size() != seeds.size())
    throw Error(ErrorKind::BadWeights, "need one weight per seed");
  double sum = 0.0;
  for (double t : weights) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::BadWeights, "weights must be positive and finite");
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error(ErrorKind::BadWeights, "weights must sum to 1");

  const std::size_t n = sp.dim();
  Matrix g(n, n);
  Matrix dual_g(n, n);
  std::vector<Vector> functionals;
  functionals.reserve(seeds.size());
  for (std::size_t k = 0; k < seeds.size(); ++k) {
    const Vector& u = seeds[k];
    if (u.dim() != n) throw Error(ErrorKind::DimensionMismatch, "seed dimension");
    if (sp.norm(u) == 0.0) throw Error(ErrorKind::DegenerateSeeds, "zero seed " + std::to_string(k));
    DualityFunctional f = canonical_duality_map(u, sp);
    Vector fhat = (1.0 / sp.dual_norm(f.coeffs)) * f.coeffs;
    const double t = weights[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        g(i, j) += t * std::conj(fhat[i]) * fhat[j];
        dual_g(i, j) += t * std::conj(u[i]) * u[j];
      }
    functionals.push_back(std::move(fhat));
  }

  const EigenSystem es = hermitian_eigen(g);
  const double lmin = es.values.front();
  const double lmax = es.values.back();
  if (!(lmin > 100.0 * static_cast<double>(n) * kEps * lmax))
    throw Error(ErrorKind::DegenerateSeeds, "seed functionals do not span the dual space (min eigenvalue " +
                                                std::to_string(lmin) + ")");
  GramMetric metric = [&] {
    try {
      return GramMetric::from_gram(g);
    } catch (const Error& e) {
      throw Error(ErrorKind::DegenerateSeeds, e.what());
    }
  }();
  return {sp, weights, seeds, std::move(functionals), std::move(metric), std::move(dual_g), lmin};
}

KuelbsEmbedding make_kuelbs(const KuelbsConfig& cfg) {
  const LpSpace sp(cfg.dim, cfg.p);
  std::vector<Vector> seeds;
  for (std::size_t k = 0; k < cfg.dim; ++k) seeds.push_back(Vector::basis(cfg.dim, k));
  CounterRng rng(cfg.seed, 0x6b75656c);
  for (std::size_t k = 0; k < cfg.extra_seeds; ++k) seeds.push_back(rng.vector(cfg.dim));
  std::vector<double> w = cfg.weights.empty() ? geometric_weights(seeds.size()) : cfg.weights;
  return build_kuelbs(seeds, w, sp);
}

cplx h_inner(const KuelbsEmbedding& k, const Vector& u, const Vector& v) {
  if (u.dim() != k.space.dim() || v.dim() != k.space.dim())
    throw Error(ErrorKind::DimensionMismatch, "h_inner: dimension");
  return k.metric.inner(u, v);
}

double h_norm(const KuelbsEmbedding& k, const Vector& u) {
  return std::sqrt(std::max(0.0, h_inner(k, u, u).real()));
}

cplx h_inner_direct(const KuelbsEmbedding& k, const Vector& u, const Vector& v) {
  if (u.dim() != k.space.dim() || v.dim() != k.space.dim())
    throw Error(ErrorKind::DimensionMismatch, "h_inner: dimension");
  cplx s{};
  for (std::size_t n = 0; n < k.functionals.size(); ++n)
    s += k.weights[n] * pair(u, k.functionals[n]) * std::conj(pair(v, k.functionals[n]));
  return s;
}

cplx dual_inner(const KuelbsEmbedding& k, const Vector& f, const Vector& g) {
  return dot(k.dual_gram * f, g);
}

SteadmanFunctional steadman(const KuelbsEmbedding& k, const Vector& u, SteadmanMetric metric) {
  if (u.dim() != k.space.dim()) throw Error(ErrorKind::DimensionMismatch, "steadman: dimension");
  const double nb = k.space.norm(u);
  if (nb == 0.0) throw Error(ErrorKind::ZeroVector, "Steadman map of the zero vector");
  Vector c(u.dim());
  double nh2;
  if (metric == SteadmanMetric::kuelbs) {
    // (v, u)_H = u* G v = sum_j (G^T conj(u))_j v_j
    const Matrix& g = k.G();
    for (std::size_t j = 0; j < u.dim(); ++j)
      for (std::size_t i = 0; i < u.dim(); ++i) c[j] += std::conj(u[i]) * g(i, j);
    nh2 = h_inner(k, u, u).real();
  } else {
    for (std::size_t j = 0; j < u.dim(); ++j) c[j] = std::conj(u[j]);
    nh2 = dot(u, u).real();
  }
  const double scale = nb * nb / nh2;
  c *= scale;
  const double dn = k.space.dual_norm(c);
  return {u, std::move(c), scale, dn};
}

// ---------------------------------------------------------------- norms

const char* to_string(NormMethod m) noexcept {
  switch (m) {
    case NormMethod::exact: return "exact";
    case NormMethod::ascent: return "ascent";
    case NormMethod::enumeration_ascent: return "enumeration+ascent";
  }
  return "?";
}

LpNormEstimate lp_operator_norm(const Matrix& a, double p, const std::vector<Vector>& extra_starts) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidP, "p must be >= 1");
  const std::size_t n = a.cols();
  if (p == 2.0) return {norm(a, NormKind::operator2), NormMethod::exact};
  if (p == 1.0 || std::isinf(p)) {
    double best = 0.0;
    const bool cols = p == 1.0;
    for (std::size_t k = 0; k < (cols ? a.cols() : a.rows()); ++k) {
      double s = 0.0;
      for (std::size_t m = 0; m < (cols ? a.rows() : a.cols()); ++m) s += std::abs(cols ? a(m, k) : a(k, m));
      best = std::max(best, s);
    }
    return {best, NormMethod::exact};
  }

  const Matrix at = a.transpose();
  std::vector<Vector> starts = extra_starts;
  for (std::size_t k = 0; k < n; ++k) starts.push_back(Vector::basis(n, k));
  const SvdResult s = svd(a);
  for (std::size_t k = 0; k < s.right.cols(); ++k) starts.push_back(s.right.column(k));
  Vector ones(n);
  for (std::size_t i = 0; i < n; ++i) ones[i] = 1.0;
  starts.push_back(std::move(ones));
  CounterRng rng(0x6c70, n);
  for (int k = 0; k < 4; ++k) starts.push_back(rng.vector(n));

  NormMethod method = NormMethod::ascent;
  if (n >= 2 && n <= 3 && a.rows() == n) {
    method = NormMethod::enumeration_ascent;
    double best = -1.0;
    Vector arg;
    for (const Vector& x : sphere_grid(n)) {
      const double val = vnorm(a * x, p) / vnorm(x, p);
      if (val > best) {
        best = val;
        arg = x;
      }
    }
    starts.push_back(arg);
  }

  double best = 0.0;
  for (const Vector& x : starts) best = std::max(best, ascend(a, at, x, p));
  return {best, method};
}

LaxReport lax_diagnostic(const KuelbsEmbedding& k, const Matrix& a, double selfadjoint_tol) {
  const std::size_t n = k.space.dim();
  if (!a.square() || a.rows() != n) throw Error(ErrorKind::DimensionMismatch, "lax_diagnostic: dimension");
  const Matrix& g = k.G();
  LaxReport r{};
  r.selfadjoint_defect = norm(g * a - a.adjoint() * g) / (1e-300 + norm(g) * norm(a));
  if (norm(a) == 0.0) r.selfadjoint_defect = 0.0;
  r.is_H_selfadjoint = r.selfadjoint_defect <= selfadjoint_tol;
  r.norm_H = k.metric.op_norm(a);

  std::vector<Vector> starts;
  if (r.is_H_selfadjoint) {
    // H-eigenvectors L^{-*} v of an H-selfadjoint A attain its spectral radius.
    const EigenSystem es = hermitian_eigen(hermitian_part(k.metric.to_euclidean(a)));
    for (std::size_t j = 0; j < n; ++j) starts.push_back(k.metric.from_euclidean(es.vectors.column(j)));
  }
  const LpNormEstimate nb = lp_operator_norm(a, k.space.p(), starts);
  r.norm_B = nb.value;
  r.norm_B_method = nb.method;
  r.ratio = r.norm_B > 0.0 ? r.norm_H / r.norm_B : 0.0;
  const double e = std::abs(0.5 - 1.0 / k.space.p());
  r.bound = k.metric.factor_condition() * std::pow(static_cast<double>(n), e);
  return r;
}

}  // namespace dst
