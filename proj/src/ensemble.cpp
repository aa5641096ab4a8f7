#include "dst/ensemble.hpp"

#include <cmath>

#include "dst/error.hpp"
#include "dst/linalg.hpp"
#include "dst/metric.hpp"
#include "dst/rng.hpp"

namespace dst {

namespace {
constexpr double kShift = 0.1;
}

Matrix generate_one(const Ensemble& e, std::uint64_t index) {
  if (e.dim == 0) throw Error(ErrorKind::ConfigError, "ensemble dim must be >= 1");
  const std::size_t n = e.dim;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CounterRng rng(e.seed, index);
  switch (e.kind) {
    case Ensemble::Kind::general: return rng.matrix(n, n, scale);
    case Ensemble::Kind::hermitian: return hermitian_part(rng.matrix(n, n, scale));
    case Ensemble::Kind::negdef:
    case Ensemble::Kind::posdef: {
      const Matrix r = rng.matrix(n, n, scale);
      Matrix m = hermitian_part(r * r.adjoint() + kShift * Matrix::identity(n));
      return e.kind == Ensemble::Kind::negdef ? -1.0 * m : m;
    }
    case Ensemble::Kind::rankdef: {
      if (e.rank == 0 || e.rank > n)
        throw Error(ErrorKind::BadRank, "rank " + std::to_string(e.rank) + " for dim " + std::to_string(n));
      const Matrix x = rng.matrix(n, e.rank, scale);
      const Matrix y = rng.matrix(n, e.rank, scale);
      return x * y.adjoint();
    }
    case Ensemble::Kind::h_selfadjoint: {
      if (!e.gram) throw Error(ErrorKind::ConfigError, "h_selfadjoint ensemble needs a Gram matrix");
      const GramMetric g = GramMetric::from_gram(*e.gram);
      return g.from_euclidean(hermitian_part(rng.matrix(n, n, scale)));
    }
  }
  throw Error(ErrorKind::ConfigError, "unknown ensemble kind");
}

std::vector<Matrix> generate(const Ensemble& e) {
  if (e.count == 0) throw Error(ErrorKind::ConfigError, "ensemble count must be >= 1");
  std::vector<Matrix> out;
  out.reserve(e.count);
  for (std::size_t k = 0; k < e.count; ++k) out.push_back(generate_one(e, k));
  return out;
}

Ensemble::Kind parse_ensemble_kind(const std::string& text, std::size_t* rank_out) {
  using K = Ensemble::Kind;
  if (text == "general") return K::general;
  if (text == "hermitian") return K::hermitian;
  if (text == "negdef") return K::negdef;
  if (text == "posdef") return K::posdef;
  if (text == "h_selfadjoint") return K::h_selfadjoint;
  if (text.rfind("rankdef(", 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(8, text.size() - 9);
    std::size_t used = 0;
    unsigned long r = 0;
    try {
      r = std::stoul(inner, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != inner.size() || inner.empty()) throw Error(ErrorKind::ConfigError, "bad rank in '" + text + "'");
    if (rank_out) *rank_out = r;
    return K::rankdef;
  }
  throw Error(ErrorKind::ConfigError, "unknown ensemble kind '" + text + "'");
}

std::string to_string(Ensemble::Kind k) {
  switch (k) {
    case Ensemble::Kind::general: return "general";
    case Ensemble::Kind::hermitian: return "hermitian";
    case Ensemble::Kind::negdef: return "negdef";
    case Ensemble::Kind::posdef: return "posdef";
    case Ensemble::Kind::rankdef: return "rankdef";
    case Ensemble::Kind::h_selfadjoint: return "h_selfadjoint";
  }
  return "?";
}

}  // namespace dst
