#include "doctest.h"

#include <filesystem>

#include "dst/ensemble.hpp"
#include "dst/io.hpp"
#include "dst/linalg.hpp"
#include "dst/suites.hpp"
#include "helpers.hpp"
#include "oracle_values.hpp"

using namespace dst;

namespace {

std::pair<std::size_t, std::size_t> parse_location(std::string_view text) {
  try {
    parse_matrix_json(text);
  } catch (const LocatedError& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    return {e.line(), e.offset()};
  }
  FAIL_CHECK("expected ParseError");
  return {0, 0};
}

SuiteConfig small_config() {
  SuiteConfig cfg;
  cfg.dims = {2, 4};
  cfg.trials = 3;
  cfg.seed = 7;
  cfg.ps = {1.5, 3.0};
  cfg.vectors_per_trial = 10;
  cfg.laplacian_sizes = {8};
  return cfg;
}

}  // namespace

TEST_CASE("counter rng matches the Python reference") {
  CounterRng a(42);
  for (std::uint64_t v : oracle::kRngSeed42) CHECK(a.next_u64() == v);
  CounterRng b(0, 7);
  for (double v : oracle::kRngSeed0Stream7Uniform) CHECK(b.uniform() == v);
  CounterRng c(42);
  const cplx z = c.complex();
  CHECK(z.real() == 2.0 * static_cast<double>(oracle::kRngSeed42[0] >> 11) * 0x1p-53 - 1.0);
  CHECK(z.imag() == 2.0 * static_cast<double>(oracle::kRngSeed42[1] >> 11) * 0x1p-53 - 1.0);
}

TEST_CASE("property: distinct streams do not collide and uniforms stay in range") {
  for (std::uint64_t s = 0; s < 64; ++s) {
    CounterRng a(5, s), b(5, s + 1);
    CHECK(a.next_u64() != b.next_u64());
    CounterRng u(s);
    for (int k = 0; k < 200; ++k) {
      const double x = u.uniform();
      CHECK(x >= 0.0);
      CHECK(x < 1.0);
    }
  }
}

TEST_CASE("ensembles") {
  Ensemble e;
  e.dim = 5;
  e.count = 4;
  e.seed = 3;
  CHECK(generate(e) == generate(e));
  CHECK(generate(e)[2] == generate_one(e, 2));

  e.kind = Ensemble::Kind::negdef;
  for (const Matrix& m : generate(e)) CHECK(hermitian_eigen(m).values.back() < 0.0);
  e.kind = Ensemble::Kind::posdef;
  for (const Matrix& m : generate(e)) CHECK(hermitian_eigen(m).values.front() > 0.0);

  e.kind = Ensemble::Kind::rankdef;
  e.rank = 2;
  for (const Matrix& m : generate(e)) {
    const SvdResult s = svd(m);
    CHECK(s.sigma[1] > 1e-3);
    CHECK(s.sigma[2] <= 1e-13 * s.sigma[0]);
  }
  e.rank = 6;
  CHECK_KIND(generate(e), ErrorKind::BadRank);
  e.rank = 0;
  CHECK_KIND(generate(e), ErrorKind::BadRank);

  std::size_t r = 0;
  CHECK(parse_ensemble_kind("rankdef(3)", &r) == Ensemble::Kind::rankdef);
  CHECK(r == 3);
  CHECK(parse_ensemble_kind("h_selfadjoint") == Ensemble::Kind::h_selfadjoint);
  CHECK_KIND(parse_ensemble_kind("gaussian"), ErrorKind::ConfigError);
  CHECK(to_string(Ensemble::Kind::negdef) == "negdef");
}

TEST_CASE("h_selfadjoint ensemble is selfadjoint in its metric") {
  CounterRng rng(13);
  const Matrix r = testing::random_matrix(rng, 4);
  Ensemble e;
  e.kind = Ensemble::Kind::h_selfadjoint;
  e.dim = 4;
  e.count = 5;
  e.gram = hermitian_part(r * r.adjoint() + 0.5 * Matrix::identity(4));
  const Matrix ginv = inverse(*e.gram);
  for (const Matrix& a : generate(e)) CHECK(testing::rel_diff(ginv * a.adjoint() * *e.gram, a) <= 1e-12);
}

TEST_CASE("matrix JSON round trip is bit-exact") {
  CounterRng rng(17);
  const Matrix m = rng.matrix(8, 8, 1e-3) + Matrix::diag({1e300, -1e-300, 0.1, 1.0 / 3.0, 2.0, 3.0, 4.0, 5.0});
  CHECK(parse_matrix_json(to_json(m).dump()) == m);
  CHECK(matrix_from_json(to_json(m)) == m);
  const Vector v = rng.vector(5);
  CHECK(vector_from_json(to_json(v)) == v);
  // Plain numbers are accepted as real entries.
  CHECK(parse_matrix_json(R"({"rows":1,"cols":2,"entries":[1.5,[0,2]]})") == Matrix{{1.5, cplx(0.0, 2.0)}});
}

TEST_CASE("Matrix Market") {
  const Matrix arr = parse_matrix_market(
      "%%MatrixMarket matrix array real general\n% comment\n3 3\n1\n4\n7\n2\n5\n8\n3\n6\n9\n");
  CHECK(arr == Matrix{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, {7.0, 8.0, 9.0}});
  const Matrix coo = parse_matrix_market("%%MatrixMarket matrix coordinate real general\n3 3 2\n1 1 -2.5\n3 2 4\n");
  Matrix expected(3, 3);
  expected(0, 0) = -2.5;
  expected(2, 1) = 4.0;
  CHECK(coo == expected);
  CHECK(parse_matrix_market(to_matrix_market(arr)) == arr);

  CHECK_KIND(parse_matrix_market("%%MatrixMarket matrix array complex general\n1 1\n1\n"), ErrorKind::ParseError);
  CHECK_KIND(parse_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"), ErrorKind::ParseError);
  CHECK_KIND(parse_matrix_market("%%MatrixMarket matrix array real general\n2 2\n1\n2\n"), ErrorKind::ParseError);
}

TEST_CASE("malformed matrix files report line and offset") {
  const auto [line, offset] = parse_location("{\"rows\": 2,\n \"cols\": 2,\n \"entries\": [1, 2, 3,]}");
  CHECK(line == 3);
  CHECK(offset > 20);
  CHECK_KIND(parse_matrix_json(R"({"rows":2,"cols":2,"entries":[1,2,3]})"), ErrorKind::ParseError);
  CHECK_KIND(parse_matrix_json(R"({"rows":1,"cols":1,"entries":[[1,2,3]]})"), ErrorKind::ParseError);
  CHECK_KIND(parse_matrix_json(R"([1,2])"), ErrorKind::ParseError);
}

TEST_CASE("file IO") {
  const auto dir = std::filesystem::temp_directory_path() / "dst_test_harness";
  std::filesystem::create_directories(dir);
  const Matrix m{{1.0, cplx(0.0, -1.0)}, {0.25, 2.0}};
  save_matrix(m, dir / "m.json");
  CHECK(load_matrix(dir / "m.json") == m);
  write_text(dir / "m.mtx", to_matrix_market(Matrix{{1.0, 2.0}, {3.0, 4.0}}));
  CHECK(load_matrix(dir / "m.mtx") == Matrix{{1.0, 2.0}, {3.0, 4.0}});
  CHECK_KIND(load_matrix(dir / "missing.json"), ErrorKind::IoError);
  CHECK_KIND(write_text(dir / "no" / "such" / "dir.txt", "x"), ErrorKind::IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("Kuelbs config JSON") {
  KuelbsConfig cfg;
  cfg.dim = 6;
  cfg.p = 1.5;
  cfg.extra_seeds = 3;
  cfg.seed = 99;
  const KuelbsConfig back = kuelbs_config_from_json(to_json(cfg));
  CHECK(back.dim == 6);
  CHECK(back.p == 1.5);
  CHECK(back.extra_seeds == 3);
  CHECK(back.seed == 99);
  CHECK(make_kuelbs(back).G() == make_kuelbs(cfg).G());
  CHECK_KIND(kuelbs_config_from_json(Json::parse(R"({"dim":"four"})")), ErrorKind::ConfigError);
}

TEST_CASE("tolerance table") {
  ToleranceTable t = ToleranceTable::defaults();
  CHECK(t["reconstruction"] == 1e-10);
  t.scale(10.0);
  CHECK(t["reconstruction"] == doctest::Approx(1e-9));
  CHECK(t["rate_max"] == 0.5);
  CHECK_KIND(t.set("nonsense", 1.0), ErrorKind::ConfigError);
  CHECK_KIND(t.set("support", -1.0), ErrorKind::ConfigError);
  CHECK_KIND(t["nonsense"], ErrorKind::ConfigError);

  SuiteConfig cfg;
  cfg.dims = {0};
  CHECK_KIND(cfg.validate(), ErrorKind::ConfigError);
  CHECK_KIND(run_suite("nonsense", small_config()), ErrorKind::ConfigError);
}

TEST_CASE("suites pass on a small configuration") {
  const Report r = run_suite("all", small_config());
  CHECK(r.suites.size() == suite_names().size());
  for (const SuiteReport& s : r.suites) {
    INFO(s.name);
    CHECK(s.total() > 0);
    CHECK(s.pass());
  }
  CHECK(r.pass());
}

TEST_CASE("deformed suite at the default tolerances") {
  SuiteConfig cfg;
  cfg.dims = {2, 4, 8};
  cfg.trials = 20;
  cfg.seed = 1;
  const SuiteReport s = run_single_suite("deformed", cfg);
  CHECK(s.total() == 3 * 3 * 20);
  CHECK(s.pass());
}

TEST_CASE("negative control: a corrupted Gram matrix fails the kuelbs suite") {
  SuiteConfig cfg = small_config();
  cfg.corrupt_gram = true;
  const SuiteReport s = run_single_suite("kuelbs", cfg);
  CHECK(s.passed() == 0);
  CHECK_FALSE(s.pass());
}

TEST_CASE("reports are identical across thread counts and reruns") {
  SuiteConfig cfg = small_config();
  cfg.threads = 1;
  const std::string seq = to_json(run_suite("all", cfg)).dump();
  cfg.threads = 4;
  const std::string par = to_json(run_suite("all", cfg)).dump();
  CHECK(seq == par);
  CHECK(to_json(run_suite("all", cfg)).dump() == par);
  cfg.seed = 8;
  CHECK(to_json(run_suite("all", cfg)).dump() != par);
}

TEST_CASE("check records") {
  CaseRecord c;
  c.le("a", 1.0, 2.0);
  CHECK(c.pass);
  c.ge("b", std::nan(""), 0.0);
  CHECK_FALSE(c.pass);
  CHECK_FALSE(c.checks.back().pass);
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}
