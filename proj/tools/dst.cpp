// dst: command-line front end for the deformed spectral toolkit.
//
// Exit codes: 0 success / all checks pass, 1 some check failed, 2 usage or input error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dst/banach_adjoint.hpp"
#include "dst/error.hpp"
#include "dst/gexpr.hpp"
#include "dst/io.hpp"
#include "dst/kuelbs.hpp"
#include "dst/linalg.hpp"
#include "dst/polar.hpp"
#include "dst/spectral.hpp"
#include "dst/suites.hpp"

namespace {

using namespace dst;

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::pair<std::string, double> split_kv(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ConfigError, "expected KEY=VALUE, got '" + kv + "'");
  const std::string val = kv.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(val, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != val.size()) throw Error(ErrorKind::ConfigError, "bad number in '" + kv + "'");
  return {kv.substr(0, eq), v};
}

Tolerances algorithm_tolerances(const std::vector<std::string>& kvs) {
  Tolerances t;
  for (const auto& kv : kvs) {
    const auto [k, v] = split_kv(kv);
    if (k == "rank") t.rank = v;
    else if (k == "hermitian") t.hermitian = v;
    else if (k == "cluster") t.cluster = v;
    else if (k == "singular") t.singular = v;
    else if (k == "max_sweeps") t.max_sweeps = static_cast<int>(v);
    else throw Error(ErrorKind::ConfigError, "unknown tolerance '" + k + "' (rank, hermitian, cluster, singular, max_sweeps)");
  }
  return t;
}

void emit(const Json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw Error(ErrorKind::ConfigError, "bad list element '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::ConfigError, "empty list");
  return out;
}

KuelbsEmbedding embedding_for(std::size_t dim, double p, std::uint64_t seed, std::size_t extra, const std::string& config) {
  KuelbsConfig kc;
  if (!config.empty()) {
    try {
      kc = kuelbs_config_from_json(Json::parse(read_text(config)));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, std::string("config: ") + e.what());
    }
  } else {
    kc.dim = dim;
    kc.p = p;
    kc.seed = seed;
    kc.extra_seeds = extra;
  }
  return make_kuelbs(kc);
}

struct Common {
  std::string input, out;
  std::vector<std::string> tol;
};

int cmd_polar(const Common& c) {
  const Matrix a = load_matrix(c.input);
  const PolarDecomposition p = polar_decompose(a, algorithm_tolerances(c.tol));
  Json j;
  j["rank"] = p.rank;
  j["rank_tol"] = p.tol;
  j["sigma"] = p.sigma;
  j["U"] = to_json(p.U);
  j["T"] = to_json(p.T);
  j["Tbar"] = to_json(p.Tbar);
  j["reconstruction_error"] = norm(p.U * p.T - a) / (1.0 + norm(a));
  j["intertwining_residual"] = intertwining_check(p, a);
  emit(j, c.out);
  return 0;
}

int cmd_deformed(const Common& c) {
  const Matrix a = load_matrix(c.input);
  const DeformedSpectralMeasure f = deformed_of(a, algorithm_tolerances(c.tol));
  Json j = to_json(f);
  j["reconstruction_error"] = norm(reconstruct(f) - a) / (1.0 + norm(a));
  emit(j, c.out);
  return 0;
}

int cmd_funcalc(const Common& c, const std::string& gtext) {
  const GExpr g = parse_gexpr(gtext);
  const Matrix a = load_matrix(c.input);
  const DeformedSpectralMeasure f = deformed_of(a, algorithm_tolerances(c.tol));
  Json j;
  j["g"] = print(g);
  j["result"] = to_json(integrate(as_function(g), f));
  emit(j, c.out);
  return 0;
}

int cmd_kuelbs(const std::string& out, std::size_t dim, double p, std::uint64_t seed, std::size_t extra,
               const std::string& config) {
  const KuelbsEmbedding k = embedding_for(dim, p, seed, extra, config);
  KuelbsConfig kc{k.space.dim(), k.space.p(), extra, seed, k.weights};
  Json j;
  j["config"] = to_json(kc);
  j["min_eigenvalue"] = k.min_eigenvalue;
  j["factor_condition"] = k.metric.factor_condition();
  j["G"] = to_json(k.G());
  j["dual_gram"] = to_json(k.dual_gram);
  emit(j, out);
  return 0;
}

int cmd_adjoint(const Common& c, std::size_t dim, double p, std::uint64_t seed, std::size_t extra, const std::string& config) {
  const Matrix a = load_matrix(c.input);
  const KuelbsEmbedding k = embedding_for(dim ? dim : a.rows(), p, seed, extra, config);
  const AdjointPair pr = adjoint(BanachOperator::on(k, a));
  const AdjointAxioms ax = adjoint_axioms(pr);
  const double contract = contract_residual(k.metric, a, pr.Astar);
  const double inv = involution_residual(pr);
  const double tol = 1e-10 * tol_scale_from_env();
  const bool ok = contract <= tol && inv <= tol && ax.accretive_min >= -tol && ax.natural_selfadjoint_residual <= tol &&
                  ax.inverse_norm <= 1.0 + tol;
  Json j;
  j["Astar"] = to_json(pr.Astar);
  j["G"] = to_json(pr.G);
  j["contract_residual"] = contract;
  j["involution_residual"] = inv;
  j["accretive_min"] = ax.accretive_min;
  j["natural_selfadjoint_residual"] = ax.natural_selfadjoint_residual;
  j["inverse_norm"] = ax.inverse_norm;
  j["pass"] = ok;
  emit(j, c.out);
  return ok ? 0 : kExitFail;
}

int cmd_baire(const Common& c, const std::string& lambdas, const std::string& csv, double p, std::uint64_t seed,
              std::size_t extra) {
  const Matrix a = load_matrix(c.input);
  const std::size_t n = a.rows();
  const KuelbsEmbedding k = embedding_for(n, p, seed, extra, "");
  const BanachOperator op = BanachOperator::on(k, a);
  std::vector<Vector> phis;
  for (std::size_t i = 0; i < n; ++i) phis.push_back(Vector::basis(n, i));
  const std::vector<BaireRow> rows = baire_convergence_study(op, phis, parse_list(lambdas), algorithm_tolerances(c.tol));

  bool ok = true;
  Json arr = Json::array();
  for (const auto& r : rows) {
    ok = ok && r.within_bound;
    arr.push_back(Json{{"lambda", r.lambda}, {"max_error", r.max_error}, {"bound", r.bound}, {"max_error_lp", r.max_error_B},
                       {"within_bound", r.within_bound}, {"rate", r.rate}});
  }
  if (!csv.empty()) {
    std::string text = "lambda,max_error,bound\n";
    char line[96];
    for (const auto& r : rows) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", r.lambda, r.max_error, r.bound);
      text += line;
    }
    write_text(csv, text);
  }
  emit(Json{{"rows", std::move(arr)}, {"pass", ok}}, c.out);
  return ok ? 0 : kExitFail;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string dims, ps, lambdas;
  std::size_t trials = 20;
  std::uint64_t seed = 42;
  std::string report;
  bool no_timestamp = false;
  std::size_t threads = 0;
  std::vector<std::string> tol;
  bool corrupt_gram = false;
  bool quiet = false;
};

int cmd_verify(const VerifyArgs& v) {
  SuiteConfig cfg;
  if (!v.dims.empty()) {
    cfg.dims.clear();
    for (double d : parse_list(v.dims)) {
      if (d < 1 || d != std::floor(d)) throw Error(ErrorKind::ConfigError, "dims must be positive integers");
      cfg.dims.push_back(static_cast<std::size_t>(d));
    }
  }
  if (!v.ps.empty()) cfg.ps = parse_list(v.ps);
  if (!v.lambdas.empty()) cfg.lambdas = parse_list(v.lambdas);
  cfg.trials = v.trials;
  cfg.seed = v.seed;
  cfg.threads = v.threads;
  cfg.corrupt_gram = v.corrupt_gram;
  cfg.tol.scale(tol_scale_from_env());
  for (const auto& kv : v.tol) {
    const auto [k, val] = split_kv(kv);
    cfg.tol.set(k, val);
  }
  if (!v.no_timestamp) cfg.timestamp = utc_now();

  const Report r = run_suite(v.suite, cfg);
  if (!v.report.empty()) save_report(r, v.report);
  for (const auto& s : r.suites) {
    std::printf("%-16s %5zu/%-5zu %s\n", s.name.c_str(), s.passed(), s.total(), s.pass() ? "PASS" : "FAIL");
    if (v.quiet) continue;
    for (const auto& c : s.cases) {
      if (c.pass) continue;
      std::printf("  FAIL %s", c.id.c_str());
      if (c.error) std::printf(" error: %s", c.error->c_str());
      for (const auto& ch : c.checks)
        if (!ch.pass) std::printf(" %s=%.3g (%s %.3g)", ch.name.c_str(), ch.value, ch.op == Check::Op::le ? "<=" : ">=", ch.limit);
      std::printf("\n");
    }
  }
  std::printf("overall %s\n", r.pass() ? "PASS" : "FAIL");
  return r.pass() ? 0 : kExitFail;
}

int cmd_laplacian(const std::string& out, std::size_t n, double r) {
  const LaplacianReport rep = dirichlet_laplacian_demo(n, r, dirichlet_laplacian(n));
  const double tol = 1e-9 * tol_scale_from_env();
  const bool ok = rep.contract_residual <= tol && rep.involution_residual <= tol && rep.axioms.accretive_min >= -tol &&
                  rep.axioms.natural_selfadjoint_residual <= tol && rep.axioms.inverse_norm <= 1.0 + tol;
  Json j;
  j["n"] = rep.n;
  j["r"] = rep.r;
  j["contract_residual"] = rep.contract_residual;
  j["involution_residual"] = rep.involution_residual;
  j["formula_residual"] = rep.formula_residual;
  j["accretive_min"] = rep.axioms.accretive_min;
  j["natural_selfadjoint_residual"] = rep.axioms.natural_selfadjoint_residual;
  j["inverse_norm"] = rep.axioms.inverse_norm;
  j["norm_A_r"] = rep.norm_A_r;
  j["norm_Astar_r"] = rep.norm_Astar_r;
  j["pass"] = ok;
  emit(j, out);
  return ok ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dst: deformed spectral representations, Kuelbs embeddings and Banach adjoints"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&common](CLI::App* sub, bool needs_input) {
    auto* opt = sub->add_option("--input", common.input, "matrix file (JSON or Matrix Market)");
    if (needs_input) opt->required();
    sub->add_option("--out", common.out, "write JSON here instead of stdout");
    sub->add_option("--tol", common.tol, "algorithm tolerance KEY=VAL (rank, hermitian, cluster, singular, max_sweeps)");
  };

  auto* polar = app.add_subcommand("polar", "polar decomposition A = U T");
  add_common(polar, true);
  auto* deformed = app.add_subcommand("deformed", "deformed spectral measure F = U E(T)");
  add_common(deformed, true);
  std::string gtext;
  auto* funcalc = app.add_subcommand("funcalc", "deformed functional calculus U g(T)");
  add_common(funcalc, true);
  funcalc->add_option("--g", gtext, "function of lambda, e.g. \"exp(-lambda)\"")->required();

  std::size_t dim = 4, extra = 0;
  double p = 2.0;
  std::uint64_t seed = 0;
  std::string config;
  auto* kuelbs = app.add_subcommand("kuelbs", "Kuelbs Gram matrix for l^p");
  kuelbs->add_option("--out", common.out, "write JSON here instead of stdout");
  kuelbs->add_option("--p", p, "exponent in (1, inf)");
  kuelbs->add_option("--dim", dim, "dimension n of l^p_n");
  kuelbs->add_option("--seed", seed, "seed of the random Kuelbs seed vectors");
  kuelbs->add_option("--extra-seeds", extra, "random seed vectors beyond the basis");
  kuelbs->add_option("--config", config, "Kuelbs config JSON (overrides --p/--dim/--seed)");

  auto* adj = app.add_subcommand("adjoint", "Banach adjoint in the Kuelbs metric");
  add_common(adj, true);
  std::size_t adj_dim = 0;
  adj->add_option("--p", p, "exponent of l^p");
  adj->add_option("--dim", adj_dim, "must match the matrix; defaults to its size");
  adj->add_option("--seed", seed, "seed of the random Kuelbs seed vectors");
  adj->add_option("--extra-seeds", extra, "random seed vectors beyond the basis");
  adj->add_option("--config", config, "Kuelbs config JSON; overrides --p, --seed, --extra-seeds");

  std::string lambdas = "1e1,1e2,1e3,1e4", csv;
  auto* baire = app.add_subcommand("baire", "resolvent approximants A_lambda -> A");
  add_common(baire, true);
  baire->add_option("--lambdas", lambdas, "comma-separated ascending list");
  baire->add_option("--csv", csv, "write lambda,max_error,bound rows");
  baire->add_option("--p", p, "exponent of l^p");
  baire->add_option("--seed", seed, "seed of the random Kuelbs seed vectors");
  baire->add_option("--extra-seeds", extra, "random seed vectors beyond the basis");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", va.suite, "deformed, funcalc, kuelbs, adjoint, baire, banach-spectral, laplacian, all");
  verify->add_option("--dims", va.dims, "comma-separated dimensions");
  verify->add_option("--trials", va.trials, "trials per dimension");
  verify->add_option("--seed", va.seed, "master seed");
  verify->add_option("--ps", va.ps, "comma-separated exponents");
  verify->add_option("--lambdas", va.lambdas, "comma-separated ascending list");
  verify->add_option("--report", va.report, "write the JSON report here");
  verify->add_flag("--no-timestamp", va.no_timestamp, "omit the timestamp for byte-identical reports");
  verify->add_option("--threads", va.threads, "0 = hardware concurrency");
  verify->add_option("--tol", va.tol, "suite tolerance KEY=VAL");
  verify->add_flag("--corrupt-gram", va.corrupt_gram, "negative control: break every Kuelbs Gram matrix");
  verify->add_flag("--quiet", va.quiet, "suite summary lines only");

  auto* demo = app.add_subcommand("demo", "worked examples");
  demo->require_subcommand(1);
  std::size_t grid = 32;
  double r = 3.0;
  auto* lap = demo->add_subcommand("laplacian", "Dirichlet Laplacian adjoint in the H^{-1} metric");
  lap->add_option("--n", grid, "interior grid points");
  lap->add_option("--r", r, "exponent for reported l^r norms");
  lap->add_option("--out", common.out, "write JSON here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; usage errors share exit code 2 with runtime errors.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*polar) return cmd_polar(common);
    if (*deformed) return cmd_deformed(common);
    if (*funcalc) return cmd_funcalc(common, gtext);
    if (*kuelbs) return cmd_kuelbs(common.out, dim, p, seed, extra, config);
    if (*adj) return cmd_adjoint(common, adj_dim, p, seed, extra, config);
    if (*baire) return cmd_baire(common, lambdas, csv, p, seed, extra);
    if (*verify) return cmd_verify(va);
    if (*lap) return cmd_laplacian(common.out, grid, r);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
