#include "dst/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <thread>

#include "dst/banach_adjoint.hpp"
#include "dst/error.hpp"
#include "dst/gexpr.hpp"
#include "dst/kuelbs.hpp"
#include "dst/linalg.hpp"
#include "dst/polar.hpp"
#include "dst/rng.hpp"
#include "dst/spectral.hpp"

namespace dst {

// ---------------------------------------------------------------- records

void CaseRecord::metric(std::string name, double v) { metrics.emplace_back(std::move(name), v); }

void CaseRecord::le(std::string name, double v, double limit) {
  const bool ok = std::isfinite(v) && v <= limit;
  checks.push_back({std::move(name), v, limit, Check::Op::le, ok});
  pass = pass && ok;
}

void CaseRecord::ge(std::string name, double v, double limit) {
  const bool ok = std::isfinite(v) && v >= limit;
  checks.push_back({std::move(name), v, limit, Check::Op::ge, ok});
  pass = pass && ok;
}

std::size_t SuiteReport::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.pass; }));
}

std::map<std::string, double> SuiteReport::worst() const {
  std::map<std::string, double> out;
  for (const auto& c : cases)
    for (const auto& ch : c.checks) {
      auto [it, fresh] = out.emplace(ch.name, ch.value);
      if (fresh) continue;
      if (!std::isfinite(ch.value) || !std::isfinite(it->second))
        it->second = std::numeric_limits<double>::quiet_NaN();
      else
        it->second = ch.op == Check::Op::le ? std::max(it->second, ch.value) : std::min(it->second, ch.value);
    }
  return out;
}

bool Report::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
}

// ---------------------------------------------------------------- tolerances

ToleranceTable ToleranceTable::defaults() {
  return {{
      {"reconstruction", 1e-10},
      {"support", 1e-10},
      {"commutation", 1e-13},
      {"variation", 1e-12},
      {"funcalc", 1e-9},
      {"embedding", 1e-12},
      {"duality", 1e-10},
      {"steadman", 1e-10},
      {"gram_agreement", 1e-12},
      {"lax", 1e-12},
      {"contract", 1e-10},
      {"involution", 1e-10},
      {"accretive", 1e-10},
      {"natural_selfadjoint", 1e-10},
      {"inverse_norm", 1e-10},
      {"hpolar", 1e-11},
      {"intertwining", 1e-10},
      {"baire_bound", 1e-6},
      {"baire_identity", 1e-10},
      {"resolvent", 1e-10},
      {"banach_reconstruction", 1e-8},
      {"laplacian", 1e-9},
      {"rate_min", 0.02},
      {"rate_max", 0.5},
  }};
}

double ToleranceTable::operator[](const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw Error(ErrorKind::ConfigError, "unknown tolerance '" + key + "'");
  return it->second;
}

void ToleranceTable::set(const std::string& key, double value) {
  const auto it = values.find(key);
  if (it == values.end()) throw Error(ErrorKind::ConfigError, "unknown tolerance '" + key + "'");
  if (!(value > 0.0) || !std::isfinite(value))
    throw Error(ErrorKind::ConfigError, "tolerance '" + key + "' must be positive and finite");
  it->second = value;
}

bool ToleranceTable::scalable(const std::string& key) { return key != "rate_min" && key != "rate_max"; }

void ToleranceTable::scale(double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw Error(ErrorKind::ConfigError, "tolerance scale must be positive");
  for (auto& [k, v] : values)
    if (scalable(k)) v *= factor;
}

double tol_scale_from_env() {
  const char* s = std::getenv("DST_TOL_SCALE");
  if (!s || !*s) return 1.0;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (*end != '\0' || !(v > 0.0) || !std::isfinite(v))
    throw Error(ErrorKind::ConfigError, std::string("DST_TOL_SCALE must be a positive number, got '") + s + "'");
  return v;
}

void SuiteConfig::validate() const {
  if (dims.empty() || std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0 || d > 64; }))
    throw Error(ErrorKind::ConfigError, "dims must be non-empty and within 1..64");
  if (trials == 0) throw Error(ErrorKind::ConfigError, "trials must be >= 1");
  if (ps.empty() || std::any_of(ps.begin(), ps.end(), [](double p) { return !(p > 1.0) || !std::isfinite(p); }))
    throw Error(ErrorKind::ConfigError, "ps must lie in (1, inf)");
  if (lambdas.size() < 2) throw Error(ErrorKind::ConfigError, "baire needs at least two lambdas");
  for (std::size_t k = 0; k < lambdas.size(); ++k)
    if (!(lambdas[k] > 0.0) || (k > 0 && !(lambdas[k] > lambdas[k - 1])))
      throw Error(ErrorKind::ConfigError, "lambdas must be positive and ascending");
  if (laplacian_sizes.empty() || std::any_of(laplacian_sizes.begin(), laplacian_sizes.end(), [](std::size_t n) { return n < 2; }))
    throw Error(ErrorKind::ConfigError, "laplacian sizes must be >= 2");
  if (!(laplacian_r > 1.0) || !std::isfinite(laplacian_r)) throw Error(ErrorKind::ConfigError, "laplacian r must lie in (1, inf)");
  if (vectors_per_trial == 0) throw Error(ErrorKind::ConfigError, "vectors_per_trial must be >= 1");
}

// ---------------------------------------------------------------- digests

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest(const Matrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](const void* p, std::size_t n) { h = fnv1a(std::string_view(static_cast<const char*>(p), n), h); };
  const std::uint64_t shape[2] = {m.rows(), m.cols()};
  feed(shape, sizeof shape);
  for (const cplx& z : m.entries()) {
    const double parts[2] = {z.real(), z.imag()};
    feed(parts, sizeof parts);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

using CaseFn = std::function<void(CaseRecord&)>;

struct CaseSpec {
  std::string id;
  CaseFn body;
};

std::vector<CaseRecord> run_cases(const std::vector<CaseSpec>& specs, std::size_t threads) {
  std::vector<CaseRecord> out(specs.size());
  auto work = [&](std::size_t i) {
    CaseRecord& rec = out[i];
    rec.id = specs[i].id;
    try {
      specs[i].body(rec);
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.pass = false;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, specs.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) work(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < specs.size(); i = next++) work(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

// Each case draws from its own stream keyed by its id, so results do not
// depend on scheduling or on which other cases run.
CounterRng case_rng(const SuiteConfig& cfg, const std::string& id) { return CounterRng(cfg.seed, fnv1a(id)); }

std::uint64_t case_seed(const SuiteConfig& cfg, const std::string& id) { return CounterRng::mix(cfg.seed ^ fnv1a(id)); }

std::string fmt_p(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

std::string trial_id(const std::string& prefix, std::size_t dim, std::size_t t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "/d%zu/t%03zu", dim, t);
  return prefix + buf;
}

Matrix random_matrix(CounterRng& rng, std::size_t n) { return rng.matrix(n, n, 1.0 / std::sqrt(static_cast<double>(n))); }

double rel_diff(const Matrix& a, const Matrix& b) { return norm(a - b) / (1.0 + norm(b)); }

double vrel_diff(const Vector& a, const Vector& b) { return vnorm(a - b) / (1.0 + vnorm(b)); }

// Symmetric distance between two finite point sets on the line.
double hausdorff(std::vector<double> a, std::vector<double> b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one_side = [](const std::vector<double>& xs, const std::vector<double>& ys) {
    double d = 0.0;
    for (double x : xs) {
      double best = std::numeric_limits<double>::infinity();
      for (double y : ys) best = std::min(best, std::abs(x - y));
      d = std::max(d, best);
    }
    return d;
  };
  return std::max(one_side(a, b), one_side(b, a));
}

// Nonzero singular values from the eigenvalues of A*A, independent of the SVD path.
std::vector<double> oracle_singular_values(const Matrix& a) {
  const EigenSystem es = hermitian_eigen(hermitian_part(a.adjoint() * a));
  const double top = es.values.empty() ? 0.0 : std::max(0.0, es.values.back());
  std::vector<double> out;
  for (double v : es.values)
    if (v > 1e-10 * top && v > 0.0) out.push_back(std::sqrt(v));
  return out;
}

// ---------------------------------------------------------------- deformed

void deformed_checks(CaseRecord& rec, const Matrix& a, const SuiteConfig& cfg) {
  const DeformedSpectralMeasure f = deformed_of(a);
  const double na = norm(a);
  rec.le("reconstruction", norm(reconstruct(f) - a) / (1.0 + na), cfg.tol["reconstruction"]);
  const std::vector<double> sv = oracle_singular_values(a);
  const double smax = sv.empty() ? 0.0 : *std::max_element(sv.begin(), sv.end());
  rec.metric("support_size", static_cast<double>(f.support().size()));
  rec.le("support", hausdorff(f.support(), sv) / std::max(1.0, smax), cfg.tol["support"]);
}

void deformed_general(CaseRecord& rec, std::size_t n, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const Matrix a = random_matrix(rng, n);
  rec.digest = digest(a);
  deformed_checks(rec, a, cfg);

  const DeformedSpectralMeasure f = deformed_of(a);
  const ScalarFunction id = [](double l) { return cplx(l, 0.0); };
  double var_gap = -std::numeric_limits<double>::infinity();
  double comm = 0.0;
  for (std::size_t k = 0; k < cfg.vectors_per_trial; ++k) {
    const Vector phi = rng.vector(n);
    const double vf = variation(f, phi), ve = variation(f.source, phi);
    var_gap = std::max(var_gap, (vf - ve) / (1.0 + ve));
    comm = std::max(comm, vrel_diff(f.U * integrate(id, f.source, phi), integrate(id, f, phi)));
  }
  rec.le("variation", var_gap, cfg.tol["variation"]);
  rec.le("commutation", comm, cfg.tol["commutation"]);
}

void deformed_negdef(CaseRecord& rec, std::size_t n, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const Matrix r = random_matrix(rng, n);
  const Matrix a = -1.0 * hermitian_part(r * r.adjoint() + 0.1 * Matrix::identity(n));
  rec.digest = digest(a);
  const SpectralMeasure e = spectral_measure(a);
  const DeformedSpectralMeasure f = deformed_of(a);
  const EigenSystem es = hermitian_eigen(a);
  double radius = 0.0;
  std::vector<double> abs_spec;
  for (double v : es.values) {
    radius = std::max(radius, std::abs(v));
    abs_spec.push_back(std::abs(v));
  }
  double cmax = -std::numeric_limits<double>::infinity(), cmin = std::numeric_limits<double>::infinity();
  for (const auto& at : e.atoms) {
    cmax = std::max(cmax, at.lambda);
    cmin = std::min(cmin, at.lambda);
  }
  const std::vector<double> sup = f.support();
  const double dmin = sup.empty() ? 0.0 : *std::min_element(sup.begin(), sup.end());
  const double dmax = sup.empty() ? 0.0 : *std::max_element(sup.begin(), sup.end());
  const double slack = cfg.tol["support"] * std::max(1.0, radius);
  rec.metric("spectral_radius", radius);
  rec.le("classical_max", cmax, 0.0);
  rec.ge("classical_min_over_radius", cmin + radius, -slack);
  rec.ge("deformed_min", dmin, std::numeric_limits<double>::min());
  rec.le("deformed_max_over_radius", dmax - radius, slack);
  rec.le("support", hausdorff(sup, abs_spec) / std::max(1.0, radius), cfg.tol["support"]);
  rec.le("reconstruction", norm(reconstruct(f) - a) / (1.0 + norm(a)), cfg.tol["reconstruction"]);
}

void deformed_rankdef(CaseRecord& rec, std::size_t n, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const std::size_t r = std::max<std::size_t>(1, n / 2);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  const Matrix x = rng.matrix(n, r, s), y = rng.matrix(n, r, s);
  const Matrix a = x * y.adjoint();
  rec.digest = digest(a);
  rec.metric("rank", static_cast<double>(r));
  deformed_checks(rec, a, cfg);
  const DeformedSpectralMeasure f = deformed_of(a);
  rec.le("support_count_error", std::abs(static_cast<double>(f.support().size()) - static_cast<double>(r)), 0.0);
}

std::vector<CaseSpec> deformed_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (std::size_t n : cfg.dims)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      out.push_back({trial_id("deformed/general", n, t), [n, &cfg](CaseRecord& r) { deformed_general(r, n, cfg); }});
      out.push_back({trial_id("deformed/negdef", n, t), [n, &cfg](CaseRecord& r) { deformed_negdef(r, n, cfg); }});
      out.push_back({trial_id("deformed/rankdef", n, t), [n, &cfg](CaseRecord& r) { deformed_rankdef(r, n, cfg); }});
    }
  return out;
}

// ---------------------------------------------------------------- funcalc

const std::vector<std::string>& funcalc_corpus() {
  static const std::vector<std::string> corpus{"lambda", "lambda^2", "exp(-lambda)", "sin(lambda)", "sqrt(lambda)"};
  return corpus;
}

void funcalc_case(CaseRecord& rec, std::size_t n, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const Matrix a = random_matrix(rng, n);
  const Matrix r = random_matrix(rng, n);
  const Matrix pd = hermitian_part(r * r.adjoint() + 0.1 * Matrix::identity(n));
  rec.digest = digest(a);

  const DeformedSpectralMeasure f = deformed_of(a);
  const PolarDecomposition p = polar_decompose(a);
  // g(T) from an independent SVD: T = V diag(sigma) V*.
  const SvdResult s = svd(a);
  const DeformedSpectralMeasure fpd = deformed_of(pd);
  const SpectralMeasure epd = spectral_measure(pd);

  double worst = 0.0, worst_pd = 0.0;
  for (const std::string& text : funcalc_corpus()) {
    const GExpr g = parse_gexpr(text);
    Matrix gt(n, n);
    for (std::size_t k = 0; k < s.sigma.size(); ++k) {
      const Vector v = s.right.column(k);
      gt += eval(g, s.sigma[k]) * outer(v, v);
    }
    const Matrix oracle = p.U * gt;
    const double err = rel_diff(integrate(as_function(g), f), oracle);
    const double err_pd = rel_diff(integrate(as_function(g), fpd), integrate(as_function(g), epd));
    rec.metric("err[" + text + "]", err);
    rec.metric("err_pd[" + text + "]", err_pd);
    worst = std::max(worst, err);
    worst_pd = std::max(worst_pd, err_pd);
  }
  rec.le("deformed_calculus", worst, cfg.tol["funcalc"]);
  rec.le("classical_agreement", worst_pd, cfg.tol["funcalc"]);
}

std::vector<CaseSpec> funcalc_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (std::size_t n : cfg.dims)
    for (std::size_t t = 0; t < cfg.trials; ++t)
      out.push_back({trial_id("funcalc", n, t), [n, &cfg](CaseRecord& r) { funcalc_case(r, n, cfg); }});
  return out;
}

// ---------------------------------------------------------------- kuelbs

KuelbsEmbedding suite_embedding(std::size_t n, double p, std::uint64_t seed) {
  KuelbsConfig kc;
  kc.dim = n;
  kc.p = p;
  kc.extra_seeds = n;
  kc.seed = seed;
  return make_kuelbs(kc);
}

Matrix corrupt(const Matrix& g) {
  Matrix c = g;
  c(0, 0) -= 2.0 * norm(g, NormKind::operator2);
  return c;
}

void kuelbs_case(CaseRecord& rec, std::size_t n, double p, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const KuelbsEmbedding k = suite_embedding(n, p, case_seed(cfg, rec.id));
  const Matrix g = cfg.corrupt_gram ? corrupt(k.G()) : k.G();
  rec.digest = digest(g);
  const EigenSystem es = hermitian_eigen(hermitian_part(g));
  rec.metric("gram_max_eigenvalue", es.values.back());
  rec.ge("gram_min_eigenvalue", es.values.front(), std::numeric_limits<double>::min());
  // Everything below assumes an inner product; a corrupted G stops here.
  const GramMetric metric = GramMetric::from_gram(g);

  const LpSpace& sp = k.space;
  double emb = -std::numeric_limits<double>::infinity(), dual = 0.0, stead = 0.0, stead_norm = std::numeric_limits<double>::infinity(),
         agree = 0.0;
  for (std::size_t j = 0; j < cfg.vectors_per_trial; ++j) {
    const Vector u = rng.vector(n);
    const Vector v = rng.vector(n);
    const double nb = sp.norm(u);
    emb = std::max(emb, metric.norm(u) - nb);

    const DualityFunctional fu = canonical_duality_map(u, sp);
    dual = std::max(dual, std::abs(fu(u) - nb * nb) / (nb * nb));
    dual = std::max(dual, std::abs(sp.dual_norm(fu.coeffs) - nb) / nb);

    const SteadmanFunctional su = steadman(k, u);
    stead = std::max(stead, std::abs(su(u) - nb * nb) / (nb * nb));
    stead_norm = std::min(stead_norm, (su.dual_norm - nb) / nb);

    const cplx direct = h_inner_direct(k, u, v);
    agree = std::max(agree, std::abs(h_inner(k, u, v) - direct) / (1.0 + h_norm(k, u) * h_norm(k, v)));
  }
  rec.le("embedding", emb, cfg.tol["embedding"]);
  rec.le("duality", dual, cfg.tol["duality"]);
  rec.le("steadman", stead, cfg.tol["steadman"]);
  rec.ge("steadman_dual_norm", stead_norm, -cfg.tol["steadman"]);
  rec.le("gram_agreement", agree, cfg.tol["gram_agreement"]);

  const Matrix h = hermitian_part(random_matrix(rng, n));
  const Matrix a = metric.from_euclidean(h);
  const LaxReport lax = lax_diagnostic(k, a);
  rec.metric("lax_ratio", lax.ratio);
  rec.metric("lax_bound", lax.bound);
  rec.metric("lax_selfadjoint_defect", lax.selfadjoint_defect);
  rec.le("lax", lax.ratio / lax.bound - 1.0, cfg.tol["lax"]);
}

std::vector<CaseSpec> kuelbs_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (double p : cfg.ps)
    for (std::size_t n : cfg.dims)
      for (std::size_t t = 0; t < cfg.trials; ++t)
        out.push_back({trial_id("kuelbs/p" + fmt_p(p), n, t), [n, p, &cfg](CaseRecord& r) { kuelbs_case(r, n, p, cfg); }});
  return out;
}

// ---------------------------------------------------------------- adjoint

void adjoint_case(CaseRecord& rec, std::size_t n, double p, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const KuelbsEmbedding k = suite_embedding(n, p, case_seed(cfg, rec.id));
  const Matrix a = random_matrix(rng, n);
  rec.digest = digest(a);
  const BanachOperator op = BanachOperator::on(k, a);
  const AdjointPair pr = adjoint(op);

  rec.le("contract", contract_residual(k.metric, a, pr.Astar), cfg.tol["contract"]);
  rec.le("involution", involution_residual(pr), cfg.tol["involution"]);
  const AdjointAxioms ax = adjoint_axioms(pr);
  rec.ge("accretive_min", ax.accretive_min, -cfg.tol["accretive"]);
  rec.le("natural_selfadjoint", ax.natural_selfadjoint_residual, cfg.tol["natural_selfadjoint"]);
  rec.le("inverse_norm_excess", ax.inverse_norm - 1.0, cfg.tol["inverse_norm"]);

  const HPolar hp = h_polar(op);
  rec.metric("rank", static_cast<double>(hp.rank));
  const double na = norm(a);
  const double inter = norm(a * pr.Astar * hp.U - hp.U * pr.Astar * a) / (1.0 + na * na);
  if (hp.rank == n)
    rec.le("intertwining", inter, cfg.tol["intertwining"]);
  else
    rec.metric("intertwining_unasserted", inter);

  // A scalar multiple of the identity as Gram matrix must reproduce the Euclidean polar factors.
  const BanachOperator scaled = BanachOperator::with_metric(GramMetric::from_gram(2.5 * Matrix::identity(n)), p, a);
  const HPolar hs = h_polar(scaled);
  const PolarDecomposition pe = polar_decompose(a);
  rec.le("hpolar_scaled_identity", std::max(rel_diff(hs.U, pe.U), rel_diff(hs.T, pe.T)), cfg.tol["hpolar"]);
}

std::vector<CaseSpec> adjoint_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (double p : cfg.ps)
    for (std::size_t n : cfg.dims)
      for (std::size_t t = 0; t < cfg.trials; ++t)
        out.push_back({trial_id("adjoint/p" + fmt_p(p), n, t), [n, p, &cfg](CaseRecord& r) { adjoint_case(r, n, p, cfg); }});
  return out;
}

// ---------------------------------------------------------------- baire

void baire_case(CaseRecord& rec, std::size_t n, double p, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const KuelbsEmbedding k = suite_embedding(n, p, case_seed(cfg, rec.id));
  const Matrix a = random_matrix(rng, n);
  rec.digest = digest(a);
  const BanachOperator op = BanachOperator::on(k, a);
  std::vector<Vector> phis;
  for (int j = 0; j < 4; ++j) phis.push_back(rng.vector(n));

  const std::vector<BaireRow> rows = baire_convergence_study(op, phis, cfg.lambdas);
  const HPolar hp = h_polar(op);
  const double smin = hp.euclidean.sigma.back(), smax = hp.euclidean.sigma.front();
  const bool full_rank = hp.rank == n && smin > 1e-6 * smax;
  rec.metric("sigma_min_over_max", smax > 0.0 ? smin / smax : 0.0);

  double bound_ratio = 0.0, rate_lo = std::numeric_limits<double>::infinity(), rate_hi = 0.0;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const BaireRow& row = rows[j];
    rec.metric("error@" + fmt_p(row.lambda), row.max_error);
    rec.metric("bound@" + fmt_p(row.lambda), row.bound);
    bound_ratio = std::max(bound_ratio, row.bound > 0.0 ? row.max_error / row.bound : (row.max_error > 0.0 ? INFINITY : 0.0));
    if (j > 0) {
      rate_lo = std::min(rate_lo, row.rate);
      rate_hi = std::max(rate_hi, row.rate);
    }
  }
  rec.le("bound_ratio", bound_ratio, 1.0 + cfg.tol["baire_bound"]);
  if (full_rank) {
    rec.ge("rate_min", rate_lo, cfg.tol["rate_min"]);
    rec.le("rate_max", rate_hi, cfg.tol["rate_max"]);
  } else {
    rec.metric("rate_min_unasserted", rate_lo);
    rec.metric("rate_max_unasserted", rate_hi);
  }

  double ident = 0.0, stated = 0.0, resolvent = 0.0, inter = 0.0;
  for (double lam : cfg.lambdas) {
    const ResolventProbe pr = baire_approximant(op, hp, lam);
    ident = std::max(ident, pr.identity_residual);
    stated = std::max(stated, pr.identity_residual_stated);
    resolvent = std::max(resolvent, pr.resolvent_norm - 1.0);
    inter = std::max(inter, pr.intertwining_residual);
  }
  rec.le("identity", ident, cfg.tol["baire_identity"]);
  rec.metric("identity_stated_sign", stated);
  rec.le("resolvent_excess", resolvent, cfg.tol["resolvent"]);
  rec.le("resolvent_intertwining", inter, cfg.tol["intertwining"]);
}

std::vector<CaseSpec> baire_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (std::size_t n : cfg.dims)
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const double p = cfg.ps[t % cfg.ps.size()];
      out.push_back({trial_id("baire/p" + fmt_p(p), n, t), [n, p, &cfg](CaseRecord& r) { baire_case(r, n, p, cfg); }});
    }
  return out;
}

// ---------------------------------------------------------------- banach-spectral

void banach_case(CaseRecord& rec, std::size_t n, double p, const SuiteConfig& cfg) {
  CounterRng rng = case_rng(cfg, rec.id);
  const KuelbsEmbedding k = suite_embedding(n, p, case_seed(cfg, rec.id));
  const Matrix a = random_matrix(rng, n);
  rec.digest = digest(a);
  const Vector phi = rng.vector(n);
  const BanachSpectralReport rep = banach_deformed_spectral(BanachOperator::on(k, a), &k, phi);
  rec.le("reconstruction_lp", rep.reconstruction_error_p, cfg.tol["banach_reconstruction"]);
  rec.metric("reconstruction_fro", rep.reconstruction_error_fro);
  if (rep.steadman_form) {
    rec.metric("steadman_form_re", rep.steadman_form->sum.real());
    rec.metric("steadman_form_im", rep.steadman_form->sum.imag());
  }
}

std::vector<CaseSpec> banach_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (double p : cfg.ps)
    for (std::size_t n : cfg.dims)
      for (std::size_t t = 0; t < cfg.trials; ++t)
        out.push_back({trial_id("banach-spectral/p" + fmt_p(p), n, t), [n, p, &cfg](CaseRecord& r) { banach_case(r, n, p, cfg); }});
  return out;
}

// ---------------------------------------------------------------- laplacian

void laplacian_case(CaseRecord& rec, std::size_t n, const SuiteConfig& cfg) {
  const Matrix a = dirichlet_laplacian(n);
  rec.digest = digest(a);
  const LaplacianReport rep = dirichlet_laplacian_demo(n, cfg.laplacian_r, a);
  const double tol = cfg.tol["laplacian"];
  rec.le("contract", rep.contract_residual, tol);
  rec.le("involution", rep.involution_residual, tol);
  rec.ge("accretive_min", rep.axioms.accretive_min, -tol);
  rec.le("natural_selfadjoint", rep.axioms.natural_selfadjoint_residual, tol);
  rec.le("inverse_norm_excess", rep.axioms.inverse_norm - 1.0, tol);
  rec.metric("formula_residual", rep.formula_residual);
  rec.metric("norm_A_r", rep.norm_A_r);
  rec.metric("norm_Astar_r", rep.norm_Astar_r);
}

std::vector<CaseSpec> laplacian_cases(const SuiteConfig& cfg) {
  std::vector<CaseSpec> out;
  for (std::size_t n : cfg.laplacian_sizes)
    out.push_back({"laplacian/n" + std::to_string(n), [n, &cfg](CaseRecord& r) { laplacian_case(r, n, cfg); }});
  return out;
}

std::vector<CaseSpec> cases_for(const std::string& name, const SuiteConfig& cfg) {
  if (name == "deformed") return deformed_cases(cfg);
  if (name == "funcalc") return funcalc_cases(cfg);
  if (name == "kuelbs") return kuelbs_cases(cfg);
  if (name == "adjoint") return adjoint_cases(cfg);
  if (name == "baire") return baire_cases(cfg);
  if (name == "banach-spectral") return banach_cases(cfg);
  if (name == "laplacian") return laplacian_cases(cfg);
  throw Error(ErrorKind::ConfigError, "unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"deformed", "funcalc", "kuelbs", "adjoint", "baire", "banach-spectral", "laplacian"};
  return names;
}

SuiteReport run_single_suite(const std::string& name, const SuiteConfig& cfg) {
  cfg.validate();
  SuiteReport s;
  s.name = name;
  s.cases = run_cases(cases_for(name, cfg), cfg.threads);
  return s;
}

Report run_suite(const std::string& name, const SuiteConfig& cfg) {
  cfg.validate();
  Report r;
  r.seed = cfg.seed;
  r.timestamp = cfg.timestamp;
  r.config = to_json(cfg);
  if (name == "all") {
    for (const auto& s : suite_names()) r.suites.push_back(run_single_suite(s, cfg));
  } else {
    r.suites.push_back(run_single_suite(name, cfg));
  }
  return r;
}

// ---------------------------------------------------------------- JSON

Json to_json(const CaseRecord& c) {
  Json j;
  j["id"] = c.id;
  j["digest"] = c.digest;
  j["pass"] = c.pass;
  Json m = Json::object();
  for (const auto& [k, v] : c.metrics) m[k] = v;
  j["metrics"] = std::move(m);
  Json checks = Json::array();
  for (const auto& ch : c.checks)
    checks.push_back(Json{{"name", ch.name}, {"value", ch.value}, {"op", ch.op == Check::Op::le ? "<=" : ">="},
                          {"limit", ch.limit}, {"pass", ch.pass}});
  j["checks"] = std::move(checks);
  if (c.error) j["error"] = *c.error;
  return j;
}

Json to_json(const SuiteReport& s) {
  Json j;
  j["suite"] = s.name;
  Json worst = Json::object();
  for (const auto& [k, v] : s.worst()) worst[k] = v;
  j["summary"] = Json{{"total", s.total()}, {"passed", s.passed()}, {"pass", s.pass()}, {"worst", std::move(worst)}};
  Json cases = Json::array();
  for (const auto& c : s.cases) cases.push_back(to_json(c));
  j["cases"] = std::move(cases);
  return j;
}

Json to_json(const Report& r) {
  Json j;
  j["toolkit"] = "dst";
  j["version"] = r.version;
  j["seed"] = r.seed;
  if (r.timestamp) j["timestamp"] = *r.timestamp;
  j["config"] = r.config;
  std::size_t total = 0, passed = 0;
  for (const auto& s : r.suites) {
    total += s.total();
    passed += s.passed();
  }
  j["summary"] = Json{{"total", total}, {"passed", passed}, {"pass", r.pass()}};
  Json suites = Json::array();
  for (const auto& s : r.suites) suites.push_back(to_json(s));
  j["suites"] = std::move(suites);
  return j;
}

// Thread count is left out on purpose: reports must not depend on it.
Json to_json(const SuiteConfig& cfg) {
  Json j;
  j["dims"] = cfg.dims;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["ps"] = cfg.ps;
  j["lambdas"] = cfg.lambdas;
  j["laplacian_sizes"] = cfg.laplacian_sizes;
  j["laplacian_r"] = cfg.laplacian_r;
  j["vectors_per_trial"] = cfg.vectors_per_trial;
  j["corrupt_gram"] = cfg.corrupt_gram;
  Json t = Json::object();
  for (const auto& [k, v] : cfg.tol.values) t[k] = v;
  j["tolerances"] = std::move(t);
  return j;
}

void save_report(const Report& r, const std::filesystem::path& path) { write_text(path, to_json(r).dump(2) + "\n"); }

}  // namespace dst
