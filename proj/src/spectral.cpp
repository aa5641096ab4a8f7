#include "dst/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "dst/error.hpp"
#include "dst/linalg.hpp"

namespace dst {

namespace {

void require_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, what);
}

cplx apply_pairing(const Vector& x, const Vector& phi, const Pairing& pairing) {
  switch (pairing.kind) {
    case Pairing::Kind::standard: return dot(x, phi);
    case Pairing::Kind::gram:
      require_dim(pairing.gram.rows(), x.dim(), "quadratic_form: Gram dimension");
      return dot(pairing.gram * x, phi);
    case Pairing::Kind::functional:
      require_dim(pairing.coeffs.dim(), x.dim(), "quadratic_form: functional dimension");
      return pair(x, pairing.coeffs);
  }
  return {};
}

template <class Atoms, class Get>
QuadraticForm quadratic_form_impl(const Atoms& atoms, std::size_t dim, const Vector& phi, const Pairing& pairing,
                                  Get get) {
  require_dim(phi.dim(), dim, "quadratic_form: phi dimension");
  QuadraticForm q{{}, {}};
  q.terms.reserve(atoms.size());
  for (const auto& a : atoms) {
    const cplx t = a.lambda * a.lambda * apply_pairing(get(a) * phi, phi, pairing);
    q.terms.push_back(t);
    q.sum += t;
  }
  return q;
}

}  // namespace

std::vector<double> DeformedSpectralMeasure::support() const {
  std::vector<double> s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    const double mult = i < source.atoms.size() ? static_cast<double>(source.atoms[i].multiplicity) : 1.0;
    if (a.lambda > zero_threshold && norm(a.dF) > 1e-8 * std::sqrt(mult)) s.push_back(a.lambda);
  }
  return s;
}

SpectralMeasure spectral_measure(const Matrix& h, const Tolerances& tol) {
  const EigenSystem es = hermitian_eigen(h, tol);
  const std::size_t n = es.values.size();
  double lmax = 0.0;
  for (double v : es.values) lmax = std::max(lmax, std::abs(v));
  const double gap = tol.cluster * (1.0 + lmax);

  SpectralMeasure m;
  m.dim = n;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && es.values[end] - es.values[end - 1] <= gap) ++end;
    SpectralAtom atom{0.0, Matrix(n, n), end - start};
    double sum = 0.0;
    for (std::size_t k = start; k < end; ++k) {
      sum += es.values[k];
      const Vector v = es.vectors.column(k);
      atom.P += outer(v, v);
    }
    atom.lambda = sum / static_cast<double>(end - start);
    m.atoms.push_back(std::move(atom));
    start = end;
  }
  return m;
}

DeformedSpectralMeasure deform(const Matrix& u, const SpectralMeasure& e, const Tolerances& tol) {
  if (!u.square() || u.rows() != e.dim)
    throw Error(ErrorKind::DimensionMismatch, "deform: U does not match the measure dimension");
  double lmax = 0.0;
  for (const auto& a : e.atoms) lmax = std::max(lmax, std::abs(a.lambda));
  const double neg_tol = 100.0 * static_cast<double>(e.dim) * kEps * std::max(1.0, lmax);

  DeformedSpectralMeasure f;
  f.U = u;
  f.source = e;
  f.zero_threshold = tol.rank_for(e.dim) * lmax;
  for (const auto& a : e.atoms) {
    if (a.lambda < -neg_tol)
      throw Error(ErrorKind::NegativeSupport, "atom at lambda = " + std::to_string(a.lambda));
    f.atoms.push_back({std::max(a.lambda, 0.0), u * a.P});
  }
  return f;
}

DeformedSpectralMeasure deformed_of(const PolarDecomposition& p, const Tolerances& tol) {
  DeformedSpectralMeasure f = deform(p.U, spectral_measure(p.T, tol), tol);
  const double smax = p.sigma.empty() ? 0.0 : p.sigma.front();
  f.zero_threshold = p.tol * smax;
  return f;
}

DeformedSpectralMeasure deformed_of(const Matrix& a, const Tolerances& tol) {
  return deformed_of(polar_decompose(a, tol), tol);
}

ScalarFunction as_function(const GExpr& g) {
  return [g](double lam) { return eval(g, lam); };
}

Matrix integrate(const ScalarFunction& g, const DeformedSpectralMeasure& f) {
  Matrix out(f.U.rows(), f.U.cols());
  for (const auto& a : f.atoms) out += g(a.lambda) * a.dF;
  return out;
}

Matrix integrate(const ScalarFunction& g, const SpectralMeasure& e) {
  Matrix out(e.dim, e.dim);
  for (const auto& a : e.atoms) out += g(a.lambda) * a.P;
  return out;
}

Vector integrate(const ScalarFunction& g, const DeformedSpectralMeasure& f, const Vector& phi) {
  require_dim(phi.dim(), f.U.cols(), "integrate: phi dimension");
  Vector out(f.U.rows());
  for (const auto& a : f.atoms) out += g(a.lambda) * (a.dF * phi);
  return out;
}

Vector integrate(const ScalarFunction& g, const SpectralMeasure& e, const Vector& phi) {
  require_dim(phi.dim(), e.dim, "integrate: phi dimension");
  Vector out(e.dim);
  for (const auto& a : e.atoms) out += g(a.lambda) * (a.P * phi);
  return out;
}

QuadraticForm quadratic_form(const DeformedSpectralMeasure& f, const Vector& phi, const Pairing& pairing) {
  return quadratic_form_impl(f.atoms, f.U.cols(), phi, pairing, [](const DeformedAtom& a) -> const Matrix& { return a.dF; });
}

QuadraticForm quadratic_form(const SpectralMeasure& e, const Vector& phi, const Pairing& pairing) {
  return quadratic_form_impl(e.atoms, e.dim, phi, pairing, [](const SpectralAtom& a) -> const Matrix& { return a.P; });
}

double variation(const DeformedSpectralMeasure& f, const Vector& phi) {
  double v = 0.0;
  for (const auto& a : f.atoms) v += vnorm(a.dF * phi);
  return v;
}

double variation(const SpectralMeasure& e, const Vector& phi) {
  double v = 0.0;
  for (const auto& a : e.atoms) v += vnorm(a.P * phi);
  return v;
}

Matrix reconstruct(const SpectralMeasure& e) {
  return integrate([](double l) { return cplx(l); }, e);
}

Matrix reconstruct(const DeformedSpectralMeasure& f) {
  return integrate([](double l) { return cplx(l); }, f);
}

}  // namespace dst
