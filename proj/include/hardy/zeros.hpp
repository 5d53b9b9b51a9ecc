// zeros.hpp
//
// Zeros of Z(t): grid scan with sign-change bracketing, bisection refinement,
// a probe for close pairs hiding between grid points, and a per-chunk count
// check against (theta(b) - theta(a))/pi. Also gap statistics, the points
// where theta(t) is congruent to -phi modulo pi, and the zeta sum over them.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/cache.hpp"
#include "hardy/numeric.hpp"
#include "hardy/report.hpp"
#include "hardy/special.hpp"

namespace hardy {

enum class ZeroSource { fast, oracle };

inline std::string to_string(ZeroSource s) { return s == ZeroSource::fast ? "fast" : "oracle"; }

inline ZeroSource parse_zero_source(std::string_view s) {
  if (s == "fast") return ZeroSource::fast;
  if (s == "oracle") return ZeroSource::oracle;
  throw std::invalid_argument("unknown zero source '" + std::string(s) + "'");
}

inline double z_for_source(double t, ZeroSource s, const EvalConfig& cfg) {
  return s == ZeroSource::fast ? hardy_z(t, cfg) : z_oracle(t, cfg.oracle_precision_digits).z;
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct ZeroTable {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> ordinates;
  double tol = 0.0;
  ZeroSource source = ZeroSource::fast;
  // Chunks whose zero count stayed outside the theta-based slack after all
  // rescans. Empty for a trustworthy table.
  std::vector<Interval> suspect;

  std::size_t size() const { return ordinates.size(); }
  bool empty() const { return ordinates.empty(); }
  bool suspect_free() const { return suspect.empty(); }

  // Index of the first ordinate >= t.
  std::size_t lower_index(double t) const {
    return static_cast<std::size_t>(std::lower_bound(ordinates.begin(), ordinates.end(), t) - ordinates.begin());
  }
  // Number of ordinates in (a, b].
  std::size_t count_between(double a, double b) const {
    const auto first = std::upper_bound(ordinates.begin(), ordinates.end(), a);
    const auto last = std::upper_bound(ordinates.begin(), ordinates.end(), b);
    return static_cast<std::size_t>(last - first);
  }
  bool covers(double a, double b) const { return lo <= a && b <= hi; }

  ZeroTable slice(double a, double b) const {
    if (!covers(a, b)) throw std::out_of_range("ZeroTable::slice: window not covered by the table");
    ZeroTable out;
    out.lo = a;
    out.hi = b;
    out.tol = tol;
    out.source = source;
    const auto first = std::lower_bound(ordinates.begin(), ordinates.end(), a);
    const auto last = std::upper_bound(ordinates.begin(), ordinates.end(), b);
    out.ordinates.assign(first, last);
    for (const auto& s : suspect) {
      if (s.hi > a && s.lo < b) out.suspect.push_back({std::max(s.lo, a), std::min(s.hi, b)});
    }
    return out;
  }
};

struct ZeroSearchOptions {
  unsigned workers = 1;
  int max_rescans = 3;
  // Grid cells per chunk; chunks are the unit of parallel work and of the
  // count check. Fixed, so output never depends on the worker count.
  std::size_t chunk_cells = 2048;
  ZeroSource source = ZeroSource::fast;
};

namespace detail {

inline int sign_of(double z) { return z < 0.0 ? -1 : 1; }

struct Bracket {
  double a;
  double b;
  int sign_a;
};

template <class F>
double bisect_sign_change(const F& f, Bracket br, double tol) {
  double a = br.a, b = br.b;
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    if (sign_of(f(m)) == br.sign_a) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Golden-section search for the minimum of s*Z on [a, b], stopping as soon as
// a point of the opposite sign shows up.
template <class F>
std::optional<double> probe_hidden_pair(const F& f, int s, double a, double b) {
  constexpr double r = 0.6180339887498949;
  const double width0 = b - a;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = s * f(x1), f2 = s * f(x2);
  for (int it = 0; it < 60 && b - a > 1e-7 * width0; ++it) {
    if (f1 < 0.0) return x1;
    if (f2 < 0.0) return x2;
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = s * f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = s * f(x2);
    }
  }
  return std::nullopt;
}

// True when the parabola through three samples of s*Z turns upward with its
// vertex inside (lo, hi).
inline bool dips_inside(const double* t, const double* z, int s, double lo, double hi) {
  const double f0 = s * z[0], f1 = s * z[1], f2 = s * z[2];
  const double d01 = (f1 - f0) / (t[1] - t[0]);
  const double d12 = (f2 - f1) / (t[2] - t[1]);
  const double curv = (d12 - d01) / (t[2] - t[0]);
  if (!(curv > 0.0)) return false;
  const double vertex = 0.5 * (t[0] + t[1]) - d01 / (2.0 * curv);
  return vertex > lo && vertex < hi;
}

struct ChunkScan {
  std::vector<Bracket> brackets;
  bool suspect = false;
};

template <class F>
ChunkScan scan_chunk(const F& f, double ca, double cb, std::size_t cells, int max_rescans, const EvalConfig& cfg) {
  const double expected = (theta(cb, cfg) - theta(ca, cfg)) / pi;
  ChunkScan out;
  for (int level = 0; level <= max_rescans; ++level) {
    const std::size_t n = cells << level;
    const double h = (cb - ca) / static_cast<double>(n);
    std::vector<double> t(n + 1), z(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      t[j] = (j == n) ? cb : ca + static_cast<double>(j) * h;
      z[j] = f(t[j]);
    }
    out.brackets.clear();
    for (std::size_t j = 0; j < n; ++j) {
      const int s0 = sign_of(z[j]);
      if (s0 != sign_of(z[j + 1])) out.brackets.push_back({t[j], t[j + 1], s0});
    }
    // A close pair inside one same-signed stretch shows up as an upward
    // parabola through three samples; search the two cells around it.
    std::vector<char> claimed(n, 0);
    for (std::size_t j = 1; j < n; ++j) {
      const int s = sign_of(z[j]);
      if (s != sign_of(z[j - 1]) || s != sign_of(z[j + 1]) || claimed[j - 1] || claimed[j]) continue;
      if (!dips_inside(&t[j - 1], &z[j - 1], s, t[j - 1], t[j + 1])) continue;
      if (auto x = probe_hidden_pair(f, s, t[j - 1], t[j + 1])) {
        out.brackets.push_back({t[j - 1], *x, s});
        out.brackets.push_back({*x, t[j + 1], -s});
        claimed[j - 1] = claimed[j] = 1;
      }
    }
    std::sort(out.brackets.begin(), out.brackets.end(), [](const Bracket& l, const Bracket& r) { return l.a < r.a; });
    if (std::abs(static_cast<double>(out.brackets.size()) - expected) <= 3.0) {
      out.suspect = false;
      return out;
    }
    out.suspect = true;
  }
  return out;
}

}  // namespace detail

inline double zero_scan_spacing(double hi) { return pi / std::max(std::log(hi / two_pi), 0.25); }

inline ZeroTable find_zeros(double lo, double hi, double tol, const EvalConfig& cfg = {}, const ZeroSearchOptions& opts = {}) {
  if (!(lo >= fast_path_floor && lo < hi)) throw std::invalid_argument("find_zeros: requires 10 <= lo < hi");
  if (!(tol >= 1e-12 && tol <= 1e-3)) throw std::invalid_argument("find_zeros: tol must lie in [1e-12, 1e-3]");
  cfg.validate();
  const auto f = [&](double t) { return z_for_source(t, opts.source, cfg); };

  const double spacing = zero_scan_spacing(hi);
  const auto total_cells = static_cast<std::size_t>(std::ceil((hi - lo) / spacing));
  const std::size_t per_chunk = std::max<std::size_t>(opts.chunk_cells, 1);
  const std::size_t n_chunks = (total_cells + per_chunk - 1) / per_chunk;
  const double h = (hi - lo) / static_cast<double>(total_cells);
  auto node = [&](std::size_t j) { return j >= total_cells ? hi : lo + static_cast<double>(j) * h; };

  std::vector<detail::ChunkScan> scans(n_chunks);
  parallel_for(n_chunks, opts.workers, [&](std::size_t c) {
    const std::size_t j0 = c * per_chunk;
    const std::size_t j1 = std::min(total_cells, j0 + per_chunk);
    scans[c] = detail::scan_chunk(f, node(j0), node(j1), j1 - j0, opts.max_rescans, cfg);
  });

  ZeroTable table;
  table.lo = lo;
  table.hi = hi;
  table.tol = tol;
  table.source = opts.source;
  std::vector<detail::Bracket> brackets;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    if (scans[c].suspect) {
      table.suspect.push_back({node(c * per_chunk), node(std::min(total_cells, (c + 1) * per_chunk))});
    }
    brackets.insert(brackets.end(), scans[c].brackets.begin(), scans[c].brackets.end());
  }

  std::vector<double> roots(brackets.size());
  parallel_for(brackets.size(), opts.workers, [&](std::size_t i) { roots[i] = detail::bisect_sign_change(f, brackets[i], tol); });
  std::sort(roots.begin(), roots.end());
  for (double r : roots) {
    if (table.ordinates.empty() || r - table.ordinates.back() > tol) table.ordinates.push_back(r);
  }
  return table;
}

// Re-locates one zero with the Euler-Maclaurin oracle, starting from an
// approximate ordinate.
inline double refine_zero_with_oracle(double guess, double tol, const EvalConfig& cfg = {}) {
  const auto f = [&](double t) { return z_oracle(t, cfg.oracle_precision_digits).z; };
  double delta = 1e-6;
  for (int it = 0; it < 40; ++it, delta *= 2.0) {
    const double a = guess - delta, b = guess + delta;
    const double fa = f(a), fb = f(b);
    if (detail::sign_of(fa) != detail::sign_of(fb)) return detail::bisect_sign_change(f, {a, b, detail::sign_of(fa)}, tol);
  }
  throw std::runtime_error("refine_zero_with_oracle: no sign change near " + std::to_string(guess));
}

// ---------------------------------------------------------------------------
// Gap statistics

struct GapStats {
  double alpha = 0.0;
  double sum = 0.0;
  std::size_t count = 0;
  double T = 0.0;
};

inline GapStats gap_sum(const ZeroTable& table, double alpha) {
  if (table.size() < 2) throw std::invalid_argument("gap_sum: table needs at least two ordinates");
  if (!(alpha >= 0.0)) throw std::invalid_argument("gap_sum: alpha must be >= 0");
  NeumaierSum s;
  for (std::size_t i = 1; i < table.size(); ++i) s += std::pow(table.ordinates[i] - table.ordinates[i - 1], alpha);
  return GapStats{alpha, s.value(), table.size() - 1, table.hi};
}

inline std::vector<double> normalized_gaps(const ZeroTable& table) {
  if (table.size() < 2) throw std::invalid_argument("normalized_gaps: table needs at least two ordinates");
  std::vector<double> d(table.size() - 1);
  for (std::size_t i = 0; i + 1 < table.size(); ++i) {
    const double g = table.ordinates[i];
    d[i] = (table.ordinates[i + 1] - g) * std::log(g / two_pi) / two_pi;
  }
  return d;
}

// ---------------------------------------------------------------------------
// theta(t) + phi = m pi

struct CongruencePoint {
  double t;
  std::int64_t m;
};

inline std::vector<CongruencePoint> theta_congruence_solutions(double T, double phi, const EvalConfig& cfg = {}) {
  if (!(T >= fast_path_floor)) throw std::invalid_argument("theta_congruence_points: requires T >= 10");
  if (!(phi >= 0.0 && phi < pi)) throw std::invalid_argument("theta_congruence_points: phi must lie in [0, pi)");
  constexpr double point_tol = 1e-9;
  const auto g = [&](double t) { return theta(t, cfg) + phi; };
  const auto m_lo = static_cast<std::int64_t>(std::ceil(g(fast_path_floor) / pi));
  const auto m_hi = static_cast<std::int64_t>(std::floor(g(T) / pi));
  std::vector<CongruencePoint> pts;
  if (m_hi < m_lo) return pts;
  pts.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
  double a = fast_path_floor;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    const double target = static_cast<double>(m) * pi;
    double step = two_pi / std::max(std::log(a / two_pi), 0.25);
    double b = std::min(a + step, T);
    while (g(b) < target && b < T) {
      step *= 2.0;
      b = std::min(a + step, T);
    }
    double lo = a, hi = b;
    while (hi - lo > point_tol) {
      const double mid = 0.5 * (lo + hi);
      if (g(mid) < target) lo = mid; else hi = mid;
    }
    const double t = 0.5 * (lo + hi);
    pts.push_back({t, m});
    a = t;
  }
  return pts;
}

inline std::vector<double> theta_congruence_points(double T, double phi, const EvalConfig& cfg = {}) {
  std::vector<double> out;
  for (const auto& p : theta_congruence_solutions(T, phi, cfg)) out.push_back(p.t);
  return out;
}

struct PhaseLineSum {
  double phi = 0.0;
  std::complex<double> value;
  std::complex<double> predicted;
  std::size_t points = 0;
  // value and predicted both lie on exp(i phi) R; `along` holds their real
  // coordinates on that line.
  MomentReport along;
};

// Sum of zeta(1/2 + it) = (-1)^m exp(i phi) Z(t) over the congruence points.
inline PhaseLineSum kalpokas_steuding_sum(double T, double phi, const EvalConfig& cfg = {}, unsigned workers = 1) {
  if (!(T >= 100.0)) throw std::invalid_argument("kalpokas_steuding_sum: requires T >= 100");
  const auto pts = theta_congruence_solutions(T, phi, cfg);
  std::vector<double> terms(pts.size());
  parallel_for(pts.size(), workers, [&](std::size_t i) {
    const double z = hardy_z(pts[i].t, cfg);
    terms[i] = (pts[i].m % 2 == 0) ? z : -z;
  });
  const double s = compensated_sum(terms);
  const double main = 2.0 * std::cos(phi) * (T / two_pi) * std::log(T / (two_pi * std::numbers::e));
  const std::complex<double> rot = std::polar(1.0, phi);
  PhaseLineSum out;
  out.phi = phi;
  out.points = pts.size();
  out.value = phi == 0.0 ? std::complex<double>(s, 0.0) : rot * s;
  out.predicted = phi == 0.0 ? std::complex<double>(main, 0.0) : rot * main;
  out.along = MomentReport::compared(T, s, main, "sum zeta(1/2+it) over theta(t)+phi in pi Z, coordinate on exp(i phi) R");
  return out;
}

// ---------------------------------------------------------------------------
// Zero-table cache

inline int ordinate_digits(double max_abs, double tol) {
  const double need = std::ceil(std::log10(std::max(max_abs, 1.0) / tol)) + 1.0;
  return std::max(12, static_cast<int>(need));
}

inline std::string format_zero_table(const ZeroTable& t) {
  std::ostringstream out;
  out.precision(17);
  out << "hardy-zeros v1 lo=" << t.lo << " hi=" << t.hi << " tol=" << t.tol << " source=" << to_string(t.source) << '\n';
  out.precision(ordinate_digits(t.hi, t.tol));
  for (double g : t.ordinates) out << g << '\n';
  return out.str();
}

inline ZeroTable parse_zero_table(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  if (header.rfind("hardy-zeros v1", 0) != 0) throw std::runtime_error("not a hardy-zeros v1 table");
  ZeroTable t;
  auto need = [&](const char* key) {
    auto v = header_field(header, key);
    if (!v) throw std::runtime_error(std::string("zero table header lacks ") + key);
    return *v;
  };
  t.lo = std::stod(need("lo"));
  t.hi = std::stod(need("hi"));
  t.tol = std::stod(need("tol"));
  t.source = parse_zero_source(need("source"));
  double g;
  while (in >> g) t.ordinates.push_back(g);
  return t;
}

// Union of two tables with overlapping ranges. Inside the finer table's range
// its ordinates are kept; the merged tolerance is the coarser of the two so it
// stays a valid bound for every entry.
inline ZeroTable merge_zero_tables(const ZeroTable& x, const ZeroTable& y) {
  if (x.source != y.source) throw std::invalid_argument("merge_zero_tables: sources differ");
  if (x.hi < y.lo || y.hi < x.lo) throw std::invalid_argument("merge_zero_tables: ranges do not overlap");
  const ZeroTable& fine = x.tol <= y.tol ? x : y;
  const ZeroTable& coarse = x.tol <= y.tol ? y : x;
  ZeroTable out;
  out.lo = std::min(x.lo, y.lo);
  out.hi = std::max(x.hi, y.hi);
  out.tol = coarse.tol;
  out.source = x.source;
  for (double g : coarse.ordinates) {
    if (g < fine.lo) out.ordinates.push_back(g);
  }
  out.ordinates.insert(out.ordinates.end(), fine.ordinates.begin(), fine.ordinates.end());
  for (double g : coarse.ordinates) {
    if (g > fine.hi) out.ordinates.push_back(g);
  }
  out.suspect = x.suspect;
  out.suspect.insert(out.suspect.end(), y.suspect.begin(), y.suspect.end());
  return out;
}

class ZeroCache {
 public:
  explicit ZeroCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& directory() const { return dir_; }

  std::filesystem::path path_for(double lo, double hi, double tol, ZeroSource source) const {
    std::ostringstream name;
    name.precision(17);
    name << "zeros-" << to_string(source) << "-lo" << lo << "-hi" << hi << "-tol" << tol << ".txt";
    return dir_ / name.str();
  }

  // A cached table of the same source covering [lo, hi] at tolerance <= tol,
  // sliced to the window.
  std::optional<ZeroTable> lookup(double lo, double hi, double tol, ZeroSource source) const {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir_, ec)) return std::nullopt;
    std::optional<ZeroTable> best;
    std::filesystem::path best_path;
    for (const auto& entry : std::filesystem::directory_iterator(dir_, ec)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("zeros-", 0) != 0 || entry.path().extension() != ".txt") continue;
      std::ifstream in(entry.path());
      std::string header;
      if (!std::getline(in, header)) continue;
      try {
        if (header.rfind("hardy-zeros v1", 0) != 0) continue;
        const double flo = std::stod(header_field(header, "lo").value());
        const double fhi = std::stod(header_field(header, "hi").value());
        const double ftol = std::stod(header_field(header, "tol").value());
        if (parse_zero_source(header_field(header, "source").value()) != source) continue;
        if (flo > lo || fhi < hi || ftol > tol) continue;
        if (best && best_path < entry.path()) continue;
        best = parse_zero_table(read_file(entry.path()));
        best_path = entry.path();
      } catch (const std::exception&) {
        continue;
      }
    }
    if (!best) return std::nullopt;
    last_key_ = best_path.filename().string();
    return best->slice(lo, hi);
  }

  // Suspect tables are never persisted.
  void store(const ZeroTable& t) const {
    if (!t.suspect_free()) return;
    const auto p = path_for(t.lo, t.hi, t.tol, t.source);
    atomic_write(p, format_zero_table(t));
    last_key_ = p.filename().string();
  }

  ZeroTable get_or_compute(double lo, double hi, double tol, const EvalConfig& cfg = {}, const ZeroSearchOptions& opts = {}) const {
    if (auto hit = lookup(lo, hi, tol, opts.source)) return *hit;
    ZeroTable t = find_zeros(lo, hi, tol, cfg, opts);
    store(t);
    return t;
  }

  // File name of the table most recently read or written.
  const std::string& last_key() const { return last_key_; }

 private:
  std::filesystem::path dir_;
  mutable std::string last_key_;
};

}  // namespace hardy
