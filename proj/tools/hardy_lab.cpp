// hardy_lab: command-line front end. One subcommand per experiment; every
// table starts with a `# manifest: <json>` line (CSV) or a "manifest" member
// (JSON).
//
// Exit codes: 0 ok, 1 invalid arguments, 2 computation flagged suspect,
// 3 acceptance failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hardy/acceptance.hpp"
#include "hardy/hardy.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace hardy;

constexpr const char* artifact_version = "1.0.0";

constexpr int exit_invalid = 1;
constexpr int exit_suspect = 2;
constexpr int exit_acceptance = 3;

struct Common {
  std::string format = "csv";
  std::string out;
  std::string cache_dir;
  unsigned workers = 1;
  bool timing = false;
  int rs_terms = 1;
  int digits = 30;
  double tol = 1e-8;
  std::uint64_t seed = 20240601;

  EvalConfig cfg() const {
    EvalConfig c;
    c.rs_correction_terms = rs_terms;
    c.oracle_precision_digits = digits;
    c.validate();
    return c;
  }
  QuadOptions quad() const {
    QuadOptions q;
    q.workers = workers;
    return q;
  }
  std::filesystem::path cache() const { return cache_directory(cache_dir.empty() ? std::nullopt : std::optional<std::string>(cache_dir)); }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json parameters = json::object();
  std::vector<std::string> cache_keys;
  int exit_code = 0;

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

struct SuspectError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string cell(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

void emit(const Table& t, const std::string& command, const Common& c, double seconds) {
  json manifest = {{"command", command},
                   {"parameters", t.parameters},
                   {"artifact_version", artifact_version},
                   {"cache_keys", t.cache_keys}};
  if (c.timing) manifest["wall_time_s"] = seconds;
  std::ostringstream os;
  if (c.format == "json") {
    json rows = json::array();
    for (const auto& r : t.rows) {
      json o = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = r[i];
      rows.push_back(o);
    }
    os << json{{"manifest", manifest}, {"rows", rows}}.dump(2) << '\n';
  } else {
    os << "# manifest: " << manifest.dump() << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell(r[i]);
      os << '\n';
    }
  }
  if (c.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open --out file " + c.out);
    f << os.str();
  }
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

ZeroTable cached_zeros(const Common& c, double lo, double hi, double tol, Table& t, ZeroSource source = ZeroSource::fast) {
  ZeroCache cache(c.cache());
  ZeroSearchOptions zo;
  zo.workers = c.workers;
  zo.source = source;
  ZeroTable z = cache.get_or_compute(lo, hi, tol, c.cfg(), zo);
  if (!cache.last_key().empty()) t.cache_keys.push_back(cache.last_key());
  if (!z.suspect_free()) throw SuspectError("zero search left suspect chunks; results are lower bounds");
  return z;
}

// ---------------------------------------------------------------------------

struct ZArgs {
  std::vector<double> t;
  std::string path = "fast";
};

Table run_z(const Common& c, const ZArgs& a) {
  Table t;
  t.columns = {"t", "Z", "theta", "err_bound"};
  t.parameters = {{"t", a.t}, {"path", a.path}, {"digits", c.digits}, {"rs_correction_terms", c.rs_terms}};
  const auto cfg = c.cfg();
  for (double x : a.t) {
    ZEvaluation e;
    if (a.path == "oracle") {
      e = z_oracle(x, c.digits);
    } else if (a.path == "fast") {
      e = z_fast(x, cfg);
    } else {
      throw std::invalid_argument("--path must be fast or oracle");
    }
    t.add({x, e.z, e.theta, e.err_bound});
  }
  return t;
}

struct ZerosArgs {
  double lo = 10.0, hi = 100.0, tol = 1e-10;
  std::string source = "fast";
  bool refresh = false;
};

Table run_zeros(const Common& c, const ZerosArgs& a) {
  Table t;
  t.columns = {"n", "gamma"};
  t.parameters = {{"lo", a.lo}, {"hi", a.hi}, {"tol", a.tol}, {"source", a.source}, {"refresh", a.refresh}};
  const auto source = parse_zero_source(a.source);
  ZeroTable z;
  if (a.refresh) {
    ZeroSearchOptions zo;
    zo.workers = c.workers;
    zo.source = source;
    z = find_zeros(a.lo, a.hi, a.tol, c.cfg(), zo);
    ZeroCache cache(c.cache());
    cache.store(z);
    if (!cache.last_key().empty()) t.cache_keys.push_back(cache.last_key());
    if (!z.suspect_free()) throw SuspectError("zero search left suspect chunks");
  } else {
    z = cached_zeros(c, a.lo, a.hi, a.tol, t, source);
  }
  for (std::size_t i = 0; i < z.size(); ++i) t.add({static_cast<std::uint64_t>(i + 1), z.ordinates[i]});
  return t;
}

struct IntegralArgs {
  std::string what = "F";
  std::vector<double> T{1000.0};
  std::string integrand = "Z";
};

Table run_integral(const Common& c, const IntegralArgs& a) {
  Table t;
  t.parameters = {{"what", a.what}, {"T", a.T}, {"integrand", a.integrand}, {"tol", c.tol}};
  const auto cfg = c.cfg();
  if (a.T.empty()) throw std::invalid_argument("--T needs at least one value");
  const double tmax = *std::max_element(a.T.begin(), a.T.end());
  if (a.what == "F") {
    t.columns = {"T", "F", "abs_error_est"};
    const auto z = cached_zeros(c, fast_path_floor, std::max(tmax, 11.0), quad_zero_tol, t);
    for (double T : a.T) {
      const auto r = integrate(Integrand::of(IntegrandKind::z), 0.0, T, c.tol, z, cfg, c.quad());
      t.add({T, r.value, r.abs_error_est});
    }
  } else if (a.what == "ipm") {
    t.columns = {"T", "I_plus", "I_minus", "int_Z", "int_abs_Z", "scale_ratio", "abs_mean_ratio"};
    const auto z = cached_zeros(c, fast_path_floor, 2.0 * tmax, quad_zero_tol, t);
    const Integrand g[] = {Integrand::of(IntegrandKind::z), Integrand::of(IntegrandKind::abs_z)};
    for (double T : a.T) {
      const auto s = integrate_split(g, T, 2.0 * T, c.tol, &z, cfg, c.quad());
      const double ip = s.plus[0].value, im = s.minus[0].value;
      t.add({T, ip, im, s.total[0].value, s.total[1].value, (ip + im) / (ip - im), abs_mean_ratio(s.total[1].value, T)});
    }
  } else if (a.what == "jpm") {
    t.columns = {"T", "J_plus", "J_minus", "J_plus_over_T"};
    const auto z = cached_zeros(c, fast_path_floor, 2.0 * tmax, quad_zero_tol, t);
    for (double T : a.T) {
      const auto j = j_measures(T, z, cfg, c.workers);
      t.add({T, j.plus, j.minus, j.plus / T});
    }
  } else if (a.what == "moment") {
    t.columns = {"T", "integrand", "value", "abs_error_est"};
    const auto g = parse_integrand(a.integrand);
    const auto z = cached_zeros(c, fast_path_floor, 2.0 * tmax, quad_zero_tol, t);
    for (double T : a.T) {
      const auto r = integrate(g, T, 2.0 * T, c.tol, z, cfg, c.quad());
      t.add({T, g.name(), r.value, r.abs_error_est});
    }
  } else if (a.what == "cubic-split") {
    t.columns = {"T", "plus", "minus", "int_Z3", "int_abs_Z3", "plus_residual", "minus_residual"};
    const auto z = cached_zeros(c, fast_path_floor, 2.0 * tmax, quad_zero_tol, t);
    for (double T : a.T) {
      const auto r = one_sided_cubic(T, c.tol, z, cfg, c.quad());
      t.add({T, r.plus.value, r.minus.value, r.cube.value, r.abs_cube.value, *r.plus.residual, *r.minus.residual});
    }
  } else {
    throw std::invalid_argument("--what must be F, ipm, jpm, moment or cubic-split");
  }
  return t;
}

struct JutilaArgs {
  std::string what = "predict";
  std::vector<double> T;
  std::size_t samples = 0;
  double lo = 1e3, hi = 1e4;
  std::int64_t terms = 200000;
  std::int64_t omega_m = 20;
};

Table run_jutila(const Common& c, const JutilaArgs& a) {
  Table t;
  t.parameters = {{"what", a.what}, {"T", a.T}, {"samples", a.samples}, {"lo", a.lo}, {"hi", a.hi}, {"seed", c.seed}};
  std::vector<double> Ts = a.T;
  const CounterRng rng(c.seed);
  for (std::size_t i = 0; i < a.samples; ++i) Ts.push_back(a.lo + (a.hi - a.lo) * rng.uniform(4, i));
  if (a.what == "predict") {
    if (Ts.empty()) throw std::invalid_argument("jutila predict needs --T or --samples");
    t.columns = {"T", "F", "F1", "residual", "frac", "theta0", "envelope", "ratio"};
    const double tmax = *std::max_element(Ts.begin(), Ts.end());
    const auto z = cached_zeros(c, fast_path_floor, std::max(tmax, 11.0), quad_zero_tol, t);
    const Integrand g[] = {Integrand::of(IntegrandKind::z)};
    const PrefixIntegral F(g, tmax, c.tol, z, c.cfg(), c.quad());
    for (double T : Ts) {
      const auto d = predict_F(T);
      const double v = F.at(0, T);
      t.add({T, v, d.main, v - d.main, d.frac, d.theta0, d.envelope(), std::abs(v - d.main) / d.envelope()});
    }
  } else if (a.what == "f1int") {
    t.parameters["terms"] = a.terms;
    t.columns = {"T", "piecewise", "series", "tail_bound", "difference_over_T14"};
    for (double T : Ts) {
      const auto s = int_f1_closed_form(T, a.terms);
      const double p = int_f1_piecewise(T);
      t.add({T, p, s.value, s.tail_bound, (p - s.value) / std::pow(T, 0.25)});
    }
  } else if (a.what == "omega") {
    t.parameters["omega_m"] = a.omega_m;
    t.columns = {"family", "m", "T", "int_F1", "over_T34"};
    for (std::int64_t m = 1; m <= a.omega_m; ++m) {
      for (int fam = 0; fam < 2; ++fam) {
        const double T = fam == 0 ? omega_plus_point(m) : omega_minus_point(m);
        const double v = int_f1_piecewise(T);
        t.add({fam == 0 ? "plus" : "minus", m, T, v, v / std::pow(T, 0.75)});
      }
    }
  } else {
    throw std::invalid_argument("--what must be predict, f1int or omega");
  }
  return t;
}

Table run_cubic(const Common& c, const std::vector<double>& grid) {
  Table t;
  t.columns = {"T", "lhs", "rhs", "residual", "fitted_exponent"};
  t.parameters = {{"t_grid", grid}, {"tol", c.tol}};
  if (grid.empty()) throw std::invalid_argument("--t-grid needs at least one value");
  const double tmax = *std::max_element(grid.begin(), grid.end());
  const auto z = cached_zeros(c, fast_path_floor, 2.0 * tmax, quad_zero_tol, t);
  std::vector<double> lhs, rhs, res;
  for (double T : grid) {
    lhs.push_back(integrate(Integrand::of(IntegrandKind::z_cubed), T, 2.0 * T, c.tol, z, c.cfg(), c.quad()).value);
    rhs.push_back(cubic_moment_rhs(T, c.workers));
    res.push_back(std::abs(lhs.back() - rhs.back()));
  }
  const double e = grid.size() >= 2 ? fitted_exponent(grid, res) : std::nan("");
  for (std::size_t i = 0; i < grid.size(); ++i) t.add({grid[i], lhs[i], rhs[i], lhs[i] - rhs[i], number_or_null(e)});
  return t;
}

Table run_expsum(const Common& c, int k, const std::vector<std::uint64_t>& grid) {
  Table t;
  t.columns = {"k", "N", "S", "fitted_exponent"};
  t.parameters = {{"k", k}, {"n_grid", grid}};
  std::vector<double> N, S;
  for (auto n : grid) {
    N.push_back(static_cast<double>(n));
    S.push_back(pure_exponential_sum(k, n, c.workers));
  }
  std::vector<double> absS;
  for (double s : S) absS.push_back(std::abs(s));
  const double e = grid.size() >= 2 ? fitted_exponent(N, absS) : std::nan("");
  for (std::size_t i = 0; i < grid.size(); ++i) t.add({k, grid[i], S[i], number_or_null(e)});
  return t;
}

struct EtermArgs {
  std::string what = "E";
  std::vector<double> T{1000.0};
  double k = 1.0;
};

Table run_eterm(const Common& c, const EtermArgs& a) {
  Table t;
  t.parameters = {{"what", a.what}, {"T", a.T}, {"k", a.k}, {"tol", c.tol}};
  if (a.T.empty()) throw std::invalid_argument("--T needs at least one value");
  const double tmax = *std::max_element(a.T.begin(), a.T.end());
  const double reach = a.what == "J" ? 2.0 * tmax : tmax;
  const auto z = cached_zeros(c, fast_path_floor, std::max(reach, 11.0), quad_zero_tol, t);
  const MeanSquareField f(std::max(reach, 11.0), c.tol, z, c.cfg(), c.quad());
  if (a.what == "E") {
    t.columns = {"T", "E", "E_over_T13", "mean_square"};
    for (double T : a.T) t.add({T, e_of(f, T), e_of(f, T) / std::cbrt(T), f.mean_square(T)});
  } else if (a.what == "G") {
    t.columns = {"T", "G", "G_over_T34", "mean_E"};
    for (double T : a.T) t.add({T, g_of(f, T), g_of(f, T) / std::pow(T, 0.75), running_mean_e(f, T)});
  } else if (a.what == "J") {
    t.columns = {"T", "J_plus", "J_minus", "abs_integral", "abs_integral_error", "J_plus_over_T54", "J_minus_over_T54", "crossings"};
    for (double T : a.T) {
      const auto j = j_pm_e(f, T);
      t.add({T, j.plus, j.minus, j.abs_integral, j.abs_integral_error, j.plus / std::pow(T, 1.25), j.minus / std::pow(T, 1.25),
             j.crossings.size()});
    }
  } else if (a.what == "D") {
    t.columns = {"X", "k", "D_k"};
    const auto tr = make_etrace(f, fast_path_floor, tmax);
    for (double X : a.T) t.add({X, a.k, dk_estimate(tr, a.k, X)});
  } else {
    throw std::invalid_argument("--what must be E, G, J or D");
  }
  return t;
}

struct DistArgs {
  std::string what = "ac";
  std::vector<double> T{1000.0};
  double level = 0.5;
  double phi = 0.0;
  std::size_t samples = 10000;
};

Table run_dist(const Common& c, const DistArgs& a) {
  Table t;
  t.parameters = {{"what", a.what}, {"T", a.T}, {"level", a.level}, {"phi", a.phi}, {"samples", a.samples}, {"seed", c.seed}};
  if (a.T.empty()) throw std::invalid_argument("--T needs at least one value");
  const auto cfg = c.cfg();
  if (a.what == "ac") {
    t.columns = {"T", "c", "measure", "predicted", "residual"};
    for (double T : a.T) {
      const auto r = small_values_measure(T, a.level, 1e-9, cfg, c.workers);
      t.add({T, a.level, r.value, *r.predicted, *r.residual});
    }
  } else if (a.what == "clt") {
    t.columns = {"T", "bin_lo", "bin_hi", "count", "mean", "stddev", "ks_distance", "resampled"};
    for (double T : a.T) {
      const auto s = selberg_clt_sample(T, a.samples, c.seed, cfg, c.workers);
      for (std::size_t b = 0; b < s.histogram.counts.size(); ++b) {
        t.add({T, s.histogram.edges[b], s.histogram.edges[b + 1], s.histogram.counts[b], s.mean, s.stddev, s.ks_distance, s.resampled});
      }
    }
  } else if (a.what == "gap") {
    t.columns = {"T", "measure_plus", "alternating_gap_sum", "residual", "max_window_gap"};
    const double tmax = *std::max_element(a.T.begin(), a.T.end());
    const auto z = cached_zeros(c, fast_path_floor, 2.0 * tmax + 10.0, quad_zero_tol, t);
    for (double T : a.T) {
      const auto r = alternating_gap_identity(T, z, cfg, c.workers);
      t.add({T, r.value, *r.predicted, *r.residual, max_window_gap(z, T)});
    }
  } else if (a.what == "phase-sum") {
    t.columns = {"T", "phi", "points", "value_re", "value_im", "predicted_re", "predicted_im", "relative_error"};
    for (double T : a.T) {
      const auto s = kalpokas_steuding_sum(T, a.phi, cfg, c.workers);
      t.add({T, a.phi, s.points, s.value.real(), s.value.imag(), s.predicted.real(), s.predicted.imag(),
             number_or_null(std::abs(s.value - s.predicted) / std::abs(s.predicted))});
    }
  } else {
    throw std::invalid_argument("--what must be ac, clt, gap or phase-sum");
  }
  return t;
}

Table run_constants(const Common& c, std::uint64_t cutoff, int digits) {
  Table t;
  t.columns = {"name", "m", "a", "g", "c", "prime_cutoff", "tail_bound", "normalization", "value"};
  t.parameters = {{"prime_cutoff", cutoff}, {"digits", digits}};
  (void)c;
  t.add({"C0", nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, "", euler_constant(digits).to_string(digits)});
  for (int m = 1; m <= 4; ++m) {
    const auto k = ks_constant(m, cutoff);
    t.add({"c_" + std::to_string(2 * m), m, k.a, k.g, k.c, k.prime_cutoff, k.tail_bound, k.normalization, nullptr});
  }
  return t;
}

Table run_accept(const Common& c, bool full, const std::vector<int>& only) {
  Table t;
  t.columns = {"id", "outcome", "title", "detail", "warnings"};
  t.parameters = {{"full", full}, {"only", only}, {"seed", c.seed}};
  acceptance::Options o;
  o.full = full;
  o.workers = c.workers;
  o.seed = c.seed;
  o.cfg = c.cfg();
  if (!c.cache_dir.empty() || std::getenv(cache_env_var) != nullptr) o.cache_dir = c.cache();
  acceptance::Suite suite(o);
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int i = 1; i <= acceptance::Suite::count; ++i) ids.push_back(i);
  }
  bool failed = false;
  for (int id : ids) {
    const auto r = suite.run(id);
    std::cerr << acceptance::format_line(r) << '\n';
    std::string warn;
    for (const auto& w : r.warnings) warn += (warn.empty() ? "" : "; ") + w;
    t.add({id, r.outcome == acceptance::Outcome::fail ? "FAIL" : (r.outcome == acceptance::Outcome::warn ? "WARN" : "PASS"), r.title,
           r.detail, warn});
    failed = failed || r.outcome == acceptance::Outcome::fail;
  }
  t.exit_code = failed ? exit_acceptance : 0;
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for Hardy's Z-function"};
  app.require_subcommand(1);
  Common c;
  if (const char* env = std::getenv(cache_env_var)) c.cache_dir = env;
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", c.out, "Output file (default stdout)");
  app.add_option("--cache-dir", c.cache_dir, "Cache directory (default $HARDY_LAB_CACHE or ./.hardy-cache)");
  app.add_option("--workers", c.workers, "Worker threads; results do not depend on it")->check(CLI::Range(1u, 256u))->capture_default_str();
  app.add_flag("--timing", c.timing, "Record wall time in the manifest");
  app.add_option("--rs-terms", c.rs_terms, "Riemann-Siegel correction terms")->check(CLI::Range(0, 4))->capture_default_str();
  app.add_option("--digits", c.digits, "Oracle precision in digits")->check(CLI::Range(15, 1000))->capture_default_str();
  app.add_option("--tol", c.tol, "Quadrature tolerance per unit length")->capture_default_str();
  app.add_option("--seed", c.seed, "Seed for sampling commands")->capture_default_str();

  std::function<Table()> job;
  std::string command;

  ZArgs za;
  auto* z = app.add_subcommand("z", "Point values of Z(t)");
  z->add_option("--t", za.t, "Ordinates")->delimiter(',')->required();
  z->add_option("--path", za.path, "fast or oracle")->check(CLI::IsMember({"fast", "oracle"}))->capture_default_str();
  z->callback([&] { command = "z"; job = [&] { return run_z(c, za); }; });

  ZerosArgs zr;
  auto* zs = app.add_subcommand("zeros", "Build or refresh a zero table");
  zs->add_option("--lo", zr.lo)->capture_default_str();
  zs->add_option("--hi", zr.hi)->capture_default_str();
  zs->add_option("--zero-tol", zr.tol, "Ordinate tolerance")->capture_default_str();
  zs->add_option("--source", zr.source)->check(CLI::IsMember({"fast", "oracle"}))->capture_default_str();
  zs->add_flag("--refresh", zr.refresh, "Recompute and overwrite the cached table");
  zs->callback([&] { command = "zeros"; job = [&] { return run_zeros(c, zr); }; });

  IntegralArgs ia;
  auto* in = app.add_subcommand("integral", "F(T), I+-, J+-, moments over [T, 2T]");
  in->add_option("--what", ia.what, "F, ipm, jpm, moment, cubic-split")->capture_default_str();
  in->add_option("--T", ia.T)->delimiter(',');
  in->add_option("--integrand", ia.integrand, "Z, |Z|, Z^2, Z^3, |Z|^3, Z^4, |Z|^k")->capture_default_str();
  in->callback([&] { command = "integral"; job = [&] { return run_integral(c, ia); }; });

  JutilaArgs ja;
  auto* ju = app.add_subcommand("jutila", "F against F1, and the primitive of F1");
  ju->add_option("--what", ja.what, "predict, f1int, omega")->capture_default_str();
  ju->add_option("--T", ja.T)->delimiter(',');
  ju->add_option("--samples", ja.samples, "Random T in [lo, hi]")->capture_default_str();
  ju->add_option("--lo", ja.lo)->capture_default_str();
  ju->add_option("--hi", ja.hi)->capture_default_str();
  ju->add_option("--terms", ja.terms, "Series terms for f1int")->capture_default_str();
  ju->add_option("--omega-m", ja.omega_m)->capture_default_str();
  ju->callback([&] { command = "jutila"; job = [&] { return run_jutila(c, ja); }; });

  std::vector<double> cubic_grid{200.0, 500.0, 1000.0};
  auto* cu = app.add_subcommand("cubic", "Both sides of the cubic moment identity");
  cu->add_option("--t-grid", cubic_grid)->delimiter(',')->capture_default_str();
  cu->callback([&] { command = "cubic"; job = [&] { return run_cubic(c, cubic_grid); }; });

  int es_k = 3;
  std::vector<std::uint64_t> es_grid{1000, 10000, 100000};
  auto* es = app.add_subcommand("expsum", "Divisor exponential sums over [N, 2N]");
  es->add_option("--k", es_k)->check(CLI::Range(1, 8))->capture_default_str();
  es->add_option("--n-grid", es_grid)->delimiter(',')->capture_default_str();
  es->callback([&] { command = "expsum"; job = [&] { return run_expsum(c, es_k, es_grid); }; });

  EtermArgs ea;
  auto* et = app.add_subcommand("eterm", "E(T), G(T), J+-(T), D_k");
  et->add_option("--what", ea.what, "E, G, J, D")->capture_default_str();
  et->add_option("--T", ea.T)->delimiter(',');
  et->add_option("--k", ea.k, "Moment order for D")->capture_default_str();
  et->callback([&] { command = "eterm"; job = [&] { return run_eterm(c, ea); }; });

  DistArgs da;
  auto* di = app.add_subcommand("dist", "Small values, CLT sample, gap identity, phase-line sums");
  di->add_option("--what", da.what, "ac, clt, gap, phase-sum")->capture_default_str();
  di->add_option("--T", da.T)->delimiter(',');
  di->add_option("--level", da.level, "c for the small-value measure")->capture_default_str();
  di->add_option("--phi", da.phi)->capture_default_str();
  di->add_option("--samples", da.samples)->capture_default_str();
  di->callback([&] { command = "dist"; job = [&] { return run_dist(c, da); }; });

  std::uint64_t cutoff = 1'000'000;
  int c0_digits = 30;
  auto* co = app.add_subcommand("constants", "Euler's constant and the moment constants");
  co->add_option("--prime-cutoff", cutoff)->capture_default_str();
  co->add_option("--c0-digits", c0_digits)->check(CLI::Range(15, 1000))->capture_default_str();
  co->callback([&] { command = "constants"; job = [&] { return run_constants(c, cutoff, c0_digits); }; });

  bool quick = false, full = false;
  std::vector<int> only;
  auto* ac = app.add_subcommand("accept", "Run the acceptance suite");
  ac->add_flag("--quick", quick, "Default scale");
  ac->add_flag("--full", full, "Larger samples");
  ac->add_option("--only", only, "Criterion ids")->delimiter(',')->check(CLI::Range(1, 10));
  ac->callback([&] { command = "accept"; job = [&] { return run_accept(c, full && !quick, only); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    Table t = job();
    emit(t, command, c, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return t.exit_code;
  } catch (const SuspectError& e) {
    std::cerr << "hardy_lab: " << e.what() << '\n';
    return exit_suspect;
  } catch (const std::logic_error& e) {
    std::cerr << "hardy_lab: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "hardy_lab: " << e.what() << '\n';
    return exit_invalid;
  }
}
