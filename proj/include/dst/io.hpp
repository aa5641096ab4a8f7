#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "dst/kuelbs.hpp"
#include "dst/matrix.hpp"
#include "dst/spectral.hpp"

namespace dst {

using Json = nlohmann::ordered_json;

// Matrix JSON schema: {"rows": n, "cols": m, "entries": [[re, im], ...]}, row-major.
Json to_json(const Matrix& m);
Json to_json(const Vector& v);
/// Throws LocatedError(ParseError).
Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);

/// Parses matrix JSON text; errors carry line and byte offset.
Matrix parse_matrix_json(std::string_view text);
/// Matrix Market, `matrix array real general` or `matrix coordinate real general`.
Matrix parse_matrix_market(std::string_view text);
std::string to_matrix_market(const Matrix& m);

/// Dispatches on content: a `%%MatrixMarket` banner selects Matrix Market,
/// anything else is parsed as JSON. Throws IoError, ParseError.
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const Matrix& m, const std::filesystem::path& path);

Json to_json(const SpectralMeasure& e);
Json to_json(const DeformedSpectralMeasure& f);

Json to_json(const KuelbsConfig& cfg);
/// Throws ConfigError on missing or ill-typed fields.
KuelbsConfig kuelbs_config_from_json(const Json& j);

std::string read_text(const std::filesystem::path& path);
/// Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace dst
