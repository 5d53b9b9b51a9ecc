// meansq.hpp
//
// E(T) = int_0^T Z^2 - T log(T/2pi) - (2 C0 - 1) T, read off one running
// integral of Z^2, together with G(T) = int_0^T (E - pi), the one-sided
// integrals J+-(T) over [T, 2T] and the normalized moments of |E|.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/cache.hpp"
#include "hardy/constants.hpp"
#include "hardy/numeric.hpp"
#include "hardy/quad.hpp"
#include "hardy/zeros.hpp"

namespace hardy {

inline double mean_square_main(double T) {
  return T * std::log(T / two_pi) + (2.0 * euler_c0() - 1.0) * T;
}

// E on [0, t_end] with G tabulated at every leaf panel of the Z^2 prefix.
// E restricted to one leaf is a polynomial minus t log t terms, so one GL16
// rule per leaf integrates it to rounding. `extra` integrands ride along in
// the same prefix (index 1, 2, ...).
class MeanSquareField {
 public:
  MeanSquareField(double t_end, double tol, const ZeroTable& zeros, const EvalConfig& cfg = {}, const QuadOptions& opts = {},
                  const std::vector<Integrand>& extra = {})
      : prefix_(with_z_squared(extra), t_end, tol, zeros, cfg, opts) {
    const std::size_t np = prefix_.panels();
    g_cumulative_.reserve(np + 1);
    NeumaierSum run;
    g_cumulative_.push_back(0.0);
    for (std::size_t p = 0; p < np; ++p) {
      run += leaf_integral(prefix_.panel_start(p), prefix_.panel_start(p + 1));
      g_cumulative_.push_back(run.value());
    }
  }

  MeanSquareField(double t_end, double tol, const EvalConfig& cfg = {}, const QuadOptions& opts = {})
      : MeanSquareField(t_end, tol, build_zeros(t_end, cfg, opts.workers), cfg, opts) {}

  double t_end() const { return prefix_.t_end(); }
  double tol() const { return prefix_.tol(); }
  const PrefixIntegral& prefix() const { return prefix_; }

  double mean_square(double t) const { return prefix_.at(0, t); }
  double e(double t) const {
    if (t == 0.0) return 0.0;
    return prefix_.at(0, t) - mean_square_main(t);
  }
  // E'(t) = Z^2 - log(t/2pi) - 2 C0.
  double e_prime(double t) const {
    return prefix_.integrand_at(0, t) - std::log(t / two_pi) - 2.0 * euler_c0();
  }

  // G(t) = int_0^t (E - pi).
  double g(double t) const {
    const std::size_t p = prefix_.panel_of(t);
    const double a = prefix_.panel_start(p);
    if (t <= a) return g_cumulative_[p];
    return g_cumulative_[p] + leaf_integral(a, t);
  }
  double int_e_minus_pi(double a, double b) const { return g(b) - g(a); }

  static std::vector<Integrand> with_z_squared(const std::vector<Integrand>& extra) {
    std::vector<Integrand> g{Integrand::of(IntegrandKind::z_squared)};
    g.insert(g.end(), extra.begin(), extra.end());
    return g;
  }

  static ZeroTable build_zeros(double t_end, const EvalConfig& cfg, unsigned workers) {
    if (!(t_end > fast_path_floor)) throw std::invalid_argument("MeanSquareField: requires t_end > 10");
    ZeroSearchOptions zo;
    zo.workers = workers;
    return find_zeros(fast_path_floor, t_end, quad_zero_tol, cfg, zo);
  }

 private:
  double leaf_integral(double a, double b) const {
    const auto& rule = gauss_legendre_16();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    NeumaierSum s;
    for (int i = 0; i < gl_order; ++i) s += rule.w[i] * (e(mid + half * rule.x[i]) - pi);
    return half * s.value();
  }

  PrefixIntegral prefix_;
  std::vector<double> g_cumulative_;
};

// ---------------------------------------------------------------------------

inline double etrace_spacing(double T) { return 0.25 / std::log(T); }

struct ETrace {
  std::vector<double> grid;
  std::vector<double> e_values;
  double quadrature_tol = 0.0;
  double dt = 0.0;

  std::size_t size() const { return grid.size(); }
};

// E on t0, t0 + dt, ..., ending exactly at t1.
inline ETrace make_etrace(const MeanSquareField& f, double t0, double t1, double dt = 0.0) {
  if (!(t0 >= fast_path_floor && t0 < t1 && t1 <= f.t_end())) throw std::invalid_argument("make_etrace: requires 10 <= t0 < t1 <= t_end");
  if (dt <= 0.0) dt = etrace_spacing(t1);
  ETrace tr;
  tr.quadrature_tol = f.tol();
  const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / dt));
  tr.dt = (t1 - t0) / static_cast<double>(n);
  tr.grid.resize(n + 1);
  tr.e_values.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = i == n ? t1 : t0 + static_cast<double>(i) * tr.dt;
    tr.grid[i] = t;
    tr.e_values[i] = f.e(t);
  }
  return tr;
}

struct TrapezoidValue {
  double value = 0.0;
  double abs_error_est = 0.0;
};

// Trapezoid of g(E(t)) over the trace, with the step-doubling difference
// (T_h - T_2h)/3 as the error estimate.
template <class G>
TrapezoidValue trace_trapezoid(const ETrace& tr, std::size_t i0, std::size_t i1, G g) {
  if (i1 <= i0) return {};
  NeumaierSum fine, coarse;
  for (std::size_t i = i0; i < i1; ++i) {
    fine += 0.5 * (tr.grid[i + 1] - tr.grid[i]) * (g(tr.e_values[i]) + g(tr.e_values[i + 1]));
  }
  std::size_t i = i0;
  for (; i + 2 <= i1; i += 2) coarse += 0.5 * (tr.grid[i + 2] - tr.grid[i]) * (g(tr.e_values[i]) + g(tr.e_values[i + 2]));
  if (i < i1) coarse += 0.5 * (tr.grid[i1] - tr.grid[i]) * (g(tr.e_values[i]) + g(tr.e_values[i1]));
  return {fine.value(), std::abs(fine.value() - coarse.value()) / 3.0};
}

namespace detail {

// int |u| over one cell with u linear between the end values: a cell whose
// ends differ in sign is split at the interpolated root.
inline double abs_linear_cell(double h, double u, double v) {
  if ((u < 0.0) == (v < 0.0) || u == 0.0 || v == 0.0) return 0.5 * h * (std::abs(u) + std::abs(v));
  return 0.5 * h * (u * u + v * v) / (std::abs(u) + std::abs(v));
}

}  // namespace detail

// int |E - shift| over the trace. Cells that straddle a crossing are split at
// the linearly interpolated root, so the kink costs O(h^2) instead of O(h).
// Returns the Richardson value T_h + (T_h - T_2h)/3.
inline TrapezoidValue trace_abs_integral(const ETrace& tr, std::size_t i0, std::size_t i1, double shift) {
  if (i1 <= i0) return {};
  const auto u = [&](std::size_t i) { return tr.e_values[i] - shift; };
  NeumaierSum fine, coarse;
  for (std::size_t i = i0; i < i1; ++i) fine += detail::abs_linear_cell(tr.grid[i + 1] - tr.grid[i], u(i), u(i + 1));
  std::size_t i = i0;
  for (; i + 2 <= i1; i += 2) coarse += detail::abs_linear_cell(tr.grid[i + 2] - tr.grid[i], u(i), u(i + 2));
  if (i < i1) coarse += detail::abs_linear_cell(tr.grid[i1] - tr.grid[i], u(i), u(i1));
  const double d = (fine.value() - coarse.value()) / 3.0;
  return {fine.value() + d, std::abs(d)};
}

// ---------------------------------------------------------------------------

inline double e_of(const MeanSquareField& f, double T) {
  if (!(T >= 10.0)) throw std::domain_error("e_of: requires T >= 10");
  return f.e(T);
}

inline double e_of(double T, double tol, const EvalConfig& cfg = {}, const QuadOptions& opts = {}) {
  if (!(T >= 10.0)) throw std::domain_error("e_of: requires T >= 10");
  return MeanSquareField(std::max(T, 10.5), tol, cfg, opts).e(T);
}

inline double g_of(const MeanSquareField& f, double T) {
  if (!(T >= 10.0)) throw std::domain_error("g_of: requires T >= 10");
  return f.g(T);
}

inline double g_of(double T, double tol, const EvalConfig& cfg = {}, const QuadOptions& opts = {}) {
  if (!(T >= 10.0)) throw std::domain_error("g_of: requires T >= 10");
  return MeanSquareField(std::max(T, 10.5), tol, cfg, opts).g(T);
}

// (1/T) int_0^T E.
inline double running_mean_e(const MeanSquareField& f, double T) { return (f.g(T) + pi * T) / T; }

struct JpmE {
  double T = 0.0;
  double plus = 0.0;
  double minus = 0.0;
  std::vector<double> crossings;
  // int_T^2T |E - pi| by trapezoid on an ETrace, independent of the crossings.
  double abs_integral = 0.0;
  double abs_integral_error = 0.0;
  // int_T^2T |E| on the same trace.
  double abs_e_integral = 0.0;
  // G(2T) - G(T).
  double g_difference = 0.0;
};

namespace detail {

inline double polish_crossing(const MeanSquareField& f, double a, double b) {
  double fa = f.e(a) - pi;
  for (int it = 0; it < 200 && b - a > 1e-10 * std::max(1.0, a); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f.e(m) - pi;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  double x = 0.5 * (a + b);
  const double d = f.e_prime(x);
  if (d != 0.0) {
    const double step = (f.e(x) - pi) / d;
    if (std::abs(step) <= b - a) x -= step;
  }
  return x;
}

}  // namespace detail

inline JpmE j_pm_e(const MeanSquareField& f, double T) {
  if (!(T >= 100.0)) throw std::domain_error("j_pm_e: requires T >= 100");
  if (2.0 * T > f.t_end()) throw std::out_of_range("j_pm_e: field does not reach 2T");
  JpmE r;
  r.T = T;
  const ETrace tr = make_etrace(f, T, 2.0 * T);
  for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
    const double u = tr.e_values[i] - pi, v = tr.e_values[i + 1] - pi;
    if (u == 0.0) {
      if (i > 0) r.crossings.push_back(tr.grid[i]);
      continue;
    }
    if ((u < 0.0) != (v < 0.0) && v != 0.0) r.crossings.push_back(detail::polish_crossing(f, tr.grid[i], tr.grid[i + 1]));
  }
  std::vector<double> cuts{T};
  cuts.insert(cuts.end(), r.crossings.begin(), r.crossings.end());
  cuts.push_back(2.0 * T);
  NeumaierSum plus, minus;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double v = f.int_e_minus_pi(cuts[i], cuts[i + 1]);
    const double mid = f.e(0.5 * (cuts[i] + cuts[i + 1])) - pi;
    (mid >= 0.0 ? plus : minus) += v;
  }
  r.plus = plus.value();
  r.minus = minus.value();
  const auto abs_part = trace_abs_integral(tr, 0, tr.size() - 1, pi);
  r.abs_integral = abs_part.value;
  r.abs_integral_error = abs_part.abs_error_est;
  r.abs_e_integral = trace_abs_integral(tr, 0, tr.size() - 1, 0.0).value;
  r.g_difference = f.g(2.0 * T) - f.g(T);
  return r;
}

// X^(-1-k/4) int_10^X |E|^k, trapezoid on the trace.
inline double dk_estimate(const ETrace& tr, double k, double X) {
  if (!(k >= 0.0 && k <= 9.0)) throw std::invalid_argument("dk_estimate: k must lie in [0, 9]");
  if (!(X >= 100.0)) throw std::domain_error("dk_estimate: requires X >= 100");
  if (tr.grid.empty() || X > tr.grid.back() * (1.0 + 1e-12)) throw std::out_of_range("dk_estimate: trace does not reach X");
  const auto it = std::upper_bound(tr.grid.begin(), tr.grid.end(), X * (1.0 + 1e-12));
  const auto i1 = static_cast<std::size_t>(it - tr.grid.begin()) - 1;
  const auto v = trace_trapezoid(tr, 0, i1, [k](double e) { return k == 0.0 ? 1.0 : std::pow(std::abs(e), k); });
  return std::pow(X, -1.0 - 0.25 * k) * v.value;
}

// ---------------------------------------------------------------------------
// Cache: "hardy-etrace v1 T=<T> dt=<dt> tol=<tol>" then "t E" per line.

inline std::string format_etrace(const ETrace& tr) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "hardy-etrace v1 T=" << (tr.grid.empty() ? 0.0 : tr.grid.back()) << " dt=" << tr.dt << " tol=" << tr.quadrature_tol << '\n';
  for (std::size_t i = 0; i < tr.size(); ++i) out << tr.grid[i] << ' ' << tr.e_values[i] << '\n';
  return out.str();
}

inline ETrace parse_etrace(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  if (header.rfind("hardy-etrace v1", 0) != 0) throw std::runtime_error("not a hardy-etrace v1 file");
  ETrace tr;
  tr.dt = std::stod(header_field(header, "dt").value());
  tr.quadrature_tol = std::stod(header_field(header, "tol").value());
  double t, e;
  while (in >> t >> e) {
    tr.grid.push_back(t);
    tr.e_values.push_back(e);
  }
  return tr;
}

inline std::filesystem::path etrace_cache_path(const std::filesystem::path& dir, double T, double tol) {
  std::ostringstream name;
  name << "etrace-T" << std::setprecision(10) << T << "-tol" << tol << ".txt";
  return dir / name.str();
}

}  // namespace hardy
