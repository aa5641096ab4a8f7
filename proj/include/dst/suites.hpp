#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dst/io.hpp"

namespace dst {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// One assertion inside a case. `le` passes when value <= limit, `ge` when value >= limit.
struct Check {
  enum class Op { le, ge };
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  Op op = Op::le;
  bool pass = false;
};

struct CaseRecord {
  std::string id;
  std::string digest;  ///< FNV-1a 64 of the input bytes, hex
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Check> checks;
  std::optional<std::string> error;  ///< set when the case threw; counts as failure
  bool pass = true;

  void metric(std::string name, double v);
  void le(std::string name, double v, double limit);
  void ge(std::string name, double v, double limit);
};

struct SuiteReport {
  std::string name;
  std::vector<CaseRecord> cases;
  std::size_t total() const { return cases.size(); }
  std::size_t passed() const;
  bool pass() const { return passed() == total(); }
  /// Worst value per check name: max for `le` checks, min for `ge` checks.
  std::map<std::string, double> worst() const;
};

struct Report {
  std::string version = kToolkitVersion;
  std::uint64_t seed = 0;
  std::optional<std::string> timestamp;
  Json config;
  std::vector<SuiteReport> suites;
  bool pass() const;
};

/// Central tolerance table. Keys are the names accepted by --tol KEY=VAL.
struct ToleranceTable {
  std::map<std::string, double> values;

  static ToleranceTable defaults();
  double operator[](const std::string& key) const;
  /// Throws ConfigError for unknown keys or non-positive values.
  void set(const std::string& key, double value);
  /// Multiplies every error tolerance; the rate window is left alone.
  void scale(double factor);
  static bool scalable(const std::string& key);
};

struct SuiteConfig {
  std::vector<std::size_t> dims{2, 4, 8, 16};
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  std::vector<double> ps{1.5, 2.0, 3.0, 4.0};
  std::vector<double> lambdas{1e1, 1e2, 1e3, 1e4};
  std::vector<std::size_t> laplacian_sizes{8, 32};
  double laplacian_r = 3.0;
  /// Random vectors per trial in the kuelbs and deformed suites.
  std::size_t vectors_per_trial = 50;
  ToleranceTable tol = ToleranceTable::defaults();
  /// 0 picks hardware concurrency; 1 runs sequentially.
  std::size_t threads = 0;
  /// Negative control: inject a negative eigenvalue into every Kuelbs Gram matrix.
  bool corrupt_gram = false;
  std::optional<std::string> timestamp;

  /// Throws ConfigError.
  void validate() const;
};

/// Reads DST_TOL_SCALE; 1.0 when unset. Throws ConfigError on a malformed value.
double tol_scale_from_env();

const std::vector<std::string>& suite_names();
/// `name` is one of suite_names() or "all". Suite failures are reported, not thrown.
Report run_suite(const std::string& name, const SuiteConfig& cfg);
SuiteReport run_single_suite(const std::string& name, const SuiteConfig& cfg);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ull);
std::string digest(const Matrix& m);

Json to_json(const CaseRecord& c);
Json to_json(const SuiteReport& s);
Json to_json(const Report& r);
Json to_json(const SuiteConfig& cfg);
/// Throws IoError.
void save_report(const Report& r, const std::filesystem::path& path);

}  // namespace dst
