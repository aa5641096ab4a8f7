#pragma once

#include <cstdint>

#include "dst/matrix.hpp"

namespace dst {

/// Counter-based 64-bit generator. The stream is a pure function of
/// (seed, stream index, counter), so any language can reproduce it:
///
///     gamma        = 0x9E3779B97F4A7C15
///     mix(z)       : z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///                    z ^= z >> 27; z *= 0x94D049BB133111EB;
///                    z ^= z >> 31; return z            (all mod 2^64)
///     key          = mix(seed ^ mix((stream + 1) * gamma))
///     draw k       = mix(key + (k + 1) * gamma),  k = 0, 1, 2, ...
///     uniform()    = (draw >> 11) * 2^-53             in [0, 1)
///     symmetric()  = 2 * uniform() - 1                in [-1, 1)
///     complex()    = symmetric() + i * symmetric()   (real part drawn first)
///
/// Only integer arithmetic and exact power-of-two scaling are involved,
/// so streams are bit-identical across platforms.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static std::uint64_t mix(std::uint64_t z) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform() noexcept;
  double symmetric() noexcept;
  cplx complex() noexcept;

  /// Entries complex() * scale, filled row-major.
  Matrix matrix(std::size_t rows, std::size_t cols, double scale = 1.0);
  Vector vector(std::size_t dim, double scale = 1.0);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dst
