#include "dst/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "dst/error.hpp"

namespace dst {

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw LocatedError(ErrorKind::ParseError, msg, 0); }

std::size_t line_of(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(offset, text.size()); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::size_t json_size(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0)
    schema_error(std::string("field '") + key + "' must be a positive integer");
  return j[key].get<std::size_t>();
}

std::vector<cplx> json_entries(const Json& j, std::size_t expected) {
  if (!j.contains("entries") || !j["entries"].is_array()) schema_error("field 'entries' must be an array");
  const Json& e = j["entries"];
  if (e.size() != expected)
    schema_error("expected " + std::to_string(expected) + " entries, got " + std::to_string(e.size()));
  std::vector<cplx> out;
  out.reserve(expected);
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Json& z = e[k];
    if (z.is_number()) {
      out.emplace_back(z.get<double>(), 0.0);
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      out.emplace_back(z[0].get<double>(), z[1].get<double>());
    } else {
      schema_error("entry " + std::to_string(k) + " must be [re, im]");
    }
  }
  return out;
}

Json entries_json(std::span<const cplx> xs) {
  Json arr = Json::array();
  for (const auto& z : xs) arr.push_back(Json::array({z.real(), z.imag()}));
  return arr;
}

// Tokenizer for Matrix Market bodies that tracks line numbers and offsets.
struct MmLine {
  std::string_view text;
  std::size_t number;
  std::size_t offset;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_number(std::string_view tok, const MmLine& line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw LocatedError(ErrorKind::ParseError, "bad number '" + std::string(tok) + "'",
                       line.offset + static_cast<std::size_t>(tok.data() - line.text.data()), line.number);
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

Json to_json(const Matrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = entries_json(m.entries());
  return j;
}

Json to_json(const Vector& v) {
  Json j;
  j["dim"] = v.dim();
  j["entries"] = entries_json(v.entries());
  return j;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_object()) schema_error("matrix must be a JSON object");
  const std::size_t rows = json_size(j, "rows");
  const std::size_t cols = json_size(j, "cols");
  try {
    return Matrix::from_entries(rows, cols, json_entries(j, rows * cols));
  } catch (const LocatedError&) {
    throw;
  } catch (const Error& e) {
    schema_error(e.what());
  }
}

Vector vector_from_json(const Json& j) {
  if (!j.is_object()) schema_error("vector must be a JSON object");
  const std::size_t dim = json_size(j, "dim");
  try {
    return Vector::from_entries(json_entries(j, dim));
  } catch (const LocatedError&) {
    throw;
  } catch (const Error& e) {
    schema_error(e.what());
  }
}

Matrix parse_matrix_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    throw LocatedError(ErrorKind::ParseError, "malformed JSON", off, line_of(text, off));
  }
  return matrix_from_json(j);
}

Matrix parse_matrix_market(std::string_view text) {
  std::vector<MmLine> lines;
  std::size_t pos = 0, number = 1;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back({text.substr(pos, end - pos), number++, pos});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty() || lines[0].text.rfind("%%MatrixMarket", 0) != 0)
    throw LocatedError(ErrorKind::ParseError, "missing %%MatrixMarket banner", 0, 1);
  const auto banner = split_ws(lines[0].text);
  if (banner.size() != 5 || lower(banner[1]) != "matrix")
    throw LocatedError(ErrorKind::ParseError, "malformed banner", 0, 1);
  const std::string format = lower(banner[2]), field = lower(banner[3]), symmetry = lower(banner[4]);
  if ((format != "array" && format != "coordinate") || (field != "real" && field != "integer") || symmetry != "general")
    throw LocatedError(ErrorKind::ParseError, "only real/integer general array or coordinate matrices are supported", 0, 1);

  std::size_t li = 1;
  auto next_data_line = [&]() -> const MmLine* {
    while (li < lines.size()) {
      const MmLine& l = lines[li++];
      const auto toks = split_ws(l.text);
      if (toks.empty() || toks[0][0] == '%') continue;
      return &l;
    }
    return nullptr;
  };

  const MmLine* size_line = next_data_line();
  if (!size_line) throw LocatedError(ErrorKind::ParseError, "missing size line", text.size(), lines.back().number);
  const auto sz = split_ws(size_line->text);
  const bool coord = format == "coordinate";
  if (sz.size() != (coord ? 3u : 2u))
    throw LocatedError(ErrorKind::ParseError, "bad size line", size_line->offset, size_line->number);
  const auto rows = parse_number<std::size_t>(sz[0], *size_line);
  const auto cols = parse_number<std::size_t>(sz[1], *size_line);
  if (rows == 0 || cols == 0)
    throw LocatedError(ErrorKind::ParseError, "dimensions must be positive", size_line->offset, size_line->number);

  std::vector<cplx> entries(rows * cols);
  if (coord) {
    const auto nnz = parse_number<std::size_t>(sz[2], *size_line);
    for (std::size_t k = 0; k < nnz; ++k) {
      const MmLine* l = next_data_line();
      if (!l) throw LocatedError(ErrorKind::ParseError, "expected " + std::to_string(nnz) + " entries", text.size(), lines.back().number);
      const auto t = split_ws(l->text);
      if (t.size() != 3) throw LocatedError(ErrorKind::ParseError, "entry needs 'row col value'", l->offset, l->number);
      const auto i = parse_number<std::size_t>(t[0], *l);
      const auto j = parse_number<std::size_t>(t[1], *l);
      if (i == 0 || j == 0 || i > rows || j > cols)
        throw LocatedError(ErrorKind::ParseError, "index out of range", l->offset, l->number);
      entries[(i - 1) * cols + (j - 1)] += parse_number<double>(t[2], *l);
    }
  } else {
    // Column-major values.
    for (std::size_t k = 0; k < rows * cols; ++k) {
      const MmLine* l = next_data_line();
      if (!l) throw LocatedError(ErrorKind::ParseError, "expected " + std::to_string(rows * cols) + " values", text.size(), lines.back().number);
      const auto t = split_ws(l->text);
      if (t.size() != 1) throw LocatedError(ErrorKind::ParseError, "array entries take one value per line", l->offset, l->number);
      entries[(k % rows) * cols + (k / rows)] = parse_number<double>(t[0], *l);
    }
  }
  if (const MmLine* extra = next_data_line())
    throw LocatedError(ErrorKind::ParseError, "trailing data", extra->offset, extra->number);
  try {
    return Matrix::from_entries(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw LocatedError(ErrorKind::ParseError, e.what(), 0);
  }
}

std::string to_matrix_market(const Matrix& m) {
  std::ostringstream os;
  os.precision(17);
  os << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) os << m(i, j).real() << '\n';
  return os.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

Matrix load_matrix(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  if (text.rfind("%%MatrixMarket", 0) == 0) return parse_matrix_market(text);
  return parse_matrix_json(text);
}

void save_matrix(const Matrix& m, const std::filesystem::path& path) { write_text(path, to_json(m).dump(2) + "\n"); }

Json to_json(const SpectralMeasure& e) {
  Json j;
  j["kind"] = "spectral";
  j["dim"] = e.dim;
  Json atoms = Json::array();
  for (const auto& a : e.atoms)
    atoms.push_back(Json{{"lambda", a.lambda}, {"multiplicity", a.multiplicity}, {"P", to_json(a.P)}});
  j["atoms"] = std::move(atoms);
  return j;
}

Json to_json(const DeformedSpectralMeasure& f) {
  Json j;
  j["kind"] = "deformed";
  j["dim"] = f.U.rows();
  j["zero_threshold"] = f.zero_threshold;
  j["support"] = f.support();
  Json atoms = Json::array();
  for (const auto& a : f.atoms) atoms.push_back(Json{{"lambda", a.lambda}, {"dF", to_json(a.dF)}});
  j["atoms"] = std::move(atoms);
  j["U"] = to_json(f.U);
  j["source"] = to_json(f.source);
  return j;
}

Json to_json(const KuelbsConfig& cfg) {
  Json j;
  j["dim"] = cfg.dim;
  j["p"] = cfg.p;
  j["seeds"] = Json{{"policy", cfg.extra_seeds ? "basis+random" : "basis"}, {"extra", cfg.extra_seeds}, {"seed", cfg.seed}};
  if (cfg.weights.empty())
    j["weights"] = "geometric";
  else
    j["weights"] = cfg.weights;
  return j;
}

KuelbsConfig kuelbs_config_from_json(const Json& j) {
  KuelbsConfig cfg;
  try {
    cfg.dim = j.at("dim").get<std::size_t>();
    cfg.p = j.at("p").get<double>();
    if (j.contains("seeds")) {
      const Json& s = j.at("seeds");
      const std::string policy = s.value("policy", "basis");
      if (policy != "basis" && policy != "basis+random")
        throw Error(ErrorKind::ConfigError, "unknown seed policy '" + policy + "'");
      cfg.extra_seeds = policy == "basis" ? 0 : s.value("extra", std::size_t{0});
      cfg.seed = s.value("seed", std::uint64_t{0});
    }
    if (j.contains("weights")) {
      const Json& w = j.at("weights");
      if (w.is_string()) {
        if (w.get<std::string>() != "geometric") throw Error(ErrorKind::ConfigError, "unknown weight policy");
      } else {
        cfg.weights = w.get<std::vector<double>>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("kuelbs config: ") + e.what());
  }
  return cfg;
}

}  // namespace dst
