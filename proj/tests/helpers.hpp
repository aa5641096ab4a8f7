#pragma once

#include <cmath>
#include <cstdint>

#include "dst/error.hpp"
#include "dst/linalg.hpp"
#include "dst/matrix.hpp"
#include "dst/rng.hpp"

// Asserts that `expr` throws dst::Error of the given kind.
#define CHECK_KIND(expr, k)                \
  do {                                     \
    try {                                  \
      (void)(expr);                        \
      FAIL_CHECK("expected " #k);          \
    } catch (const dst::Error& err_) {     \
      CHECK(err_.kind() == (k));           \
    }                                      \
  } while (0)

namespace testing {

inline double rel_diff(const dst::Matrix& a, const dst::Matrix& b) { return dst::norm(a - b) / (1.0 + dst::norm(b)); }

inline double max_diff(const dst::Matrix& a, const dst::Matrix& b) { return dst::max_abs(a - b); }

inline dst::Matrix random_matrix(dst::CounterRng& rng, std::size_t n) {
  return rng.matrix(n, n, 1.0 / std::sqrt(static_cast<double>(n)));
}

inline dst::Matrix random_hermitian(dst::CounterRng& rng, std::size_t n) {
  return dst::hermitian_part(random_matrix(rng, n));
}

inline dst::Matrix random_unitary(dst::CounterRng& rng, std::size_t n) {
  return dst::hermitian_eigen(random_hermitian(rng, n)).vectors;
}

// Dimension drawn from 1..max, skewed towards small sizes where edge cases live.
inline std::size_t random_dim(dst::CounterRng& rng, std::size_t max) {
  const double u = rng.uniform();
  return 1 + static_cast<std::size_t>(u * u * static_cast<double>(max));
}

}  // namespace testing
