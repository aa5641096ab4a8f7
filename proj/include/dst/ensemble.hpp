#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dst/matrix.hpp"

namespace dst {

/// Deterministic random-matrix families. Sample k of an ensemble is drawn
/// from CounterRng(seed, k); base entries are complex() / sqrt(dim).
struct Ensemble {
  enum class Kind {
    general,        ///< R
    hermitian,      ///< (R + R*) / 2
    negdef,         ///< -(R R* + eps I), eps = 0.1
    posdef,         ///< R R* + eps I, eps = 0.1
    rankdef,        ///< X Y*, X and Y dim x rank
    h_selfadjoint,  ///< L^{-*} H L*, H Hermitian, G = L L*
  };

  Kind kind = Kind::general;
  std::size_t dim = 4;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  /// rankdef only.
  std::size_t rank = 0;
  /// h_selfadjoint only.
  std::optional<Matrix> gram;
};

/// Throws BadRank (rank > dim or 0 for rankdef), ConfigError.
std::vector<Matrix> generate(const Ensemble& e);
/// Sample `index` alone.
Matrix generate_one(const Ensemble& e, std::uint64_t index);

/// Accepts "general", "hermitian", "negdef", "posdef", "rankdef(r)", "h_selfadjoint".
Ensemble::Kind parse_ensemble_kind(const std::string& text, std::size_t* rank_out = nullptr);
std::string to_string(Ensemble::Kind k);

}  // namespace dst
