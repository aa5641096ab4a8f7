#include "dst/rng.hpp"

namespace dst {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix((stream + 1) * kGamma))) {}

std::uint64_t CounterRng::next_u64() noexcept { return mix(key_ + (++counter_) * kGamma); }

double CounterRng::uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::symmetric() noexcept { return 2.0 * uniform() - 1.0; }

cplx CounterRng::complex() noexcept {
  const double re = symmetric();
  const double im = symmetric();
  return {re, im};
}

Matrix CounterRng::matrix(std::size_t rows, std::size_t cols, double scale) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = complex() * scale;
  return m;
}

Vector CounterRng::vector(std::size_t dim, double scale) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = complex() * scale;
  return v;
}

}  // namespace dst
