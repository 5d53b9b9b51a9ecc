// distribution.hpp
//
// Value-distribution functionals of Z on windows [T, 2T]: signed integrals
// and measures of the positivity/negativity sets, the alternating gap sum,
// small-value measures, one-sided cubic integrals and the log|Z| sample.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/numeric.hpp"
#include "hardy/quad.hpp"
#include "hardy/report.hpp"
#include "hardy/special.hpp"
#include "hardy/zeros.hpp"

namespace hardy {

struct SignedPair {
  double plus = 0.0;
  double minus = 0.0;
  double abs_error_est = 0.0;
};

namespace detail {

inline void check_window_base(double T, const char* who) {
  if (!(T >= fast_path_floor)) throw std::invalid_argument(std::string(who) + ": requires T >= 10");
}

inline ZeroTable window_zeros(double a, double b, const EvalConfig& cfg, unsigned workers) {
  ZeroSearchOptions zo;
  zo.workers = workers;
  return find_zeros(a, b, quad_zero_tol, cfg, zo);
}

}  // namespace detail

// I+(T) and I-(T): integrals of Z over its positive and negative sets in [T, 2T].
inline SignedPair i_plus_minus(double T, double tol, const ZeroTable& zeros, const EvalConfig& cfg = {},
                               const QuadOptions& opts = {}) {
  detail::check_window_base(T, "i_plus_minus");
  const Integrand g[] = {Integrand::of(IntegrandKind::z)};
  const auto r = integrate_split(g, T, 2.0 * T, tol, &zeros, cfg, opts);
  return {r.plus[0].value, r.minus[0].value, r.total[0].abs_error_est};
}

inline SignedPair i_plus_minus(double T, double tol, const EvalConfig& cfg = {}, const QuadOptions& opts = {}) {
  detail::check_window_base(T, "i_plus_minus");
  return i_plus_minus(T, tol, detail::window_zeros(T, 2.0 * T, cfg, opts.workers), cfg, opts);
}

// Lebesgue measures of {Z > 0} and {Z < 0} in [T, 2T].
inline SignedPair j_measures(double T, const ZeroTable& zeros, const EvalConfig& cfg = {}, unsigned workers = 1) {
  detail::check_window_base(T, "j_measures");
  const auto p = sign_partition(T, 2.0 * T, zeros, cfg, workers);
  return {p.measure(1), p.measure(-1), zeros.tol * static_cast<double>(p.breakpoints.size())};
}

inline SignedPair j_measures(double T, double tol, const EvalConfig& cfg = {}, unsigned workers = 1) {
  detail::check_window_base(T, "j_measures");
  ZeroSearchOptions zo;
  zo.workers = workers;
  return j_measures(T, find_zeros(T, 2.0 * T, std::clamp(tol, 1e-12, 1e-3), cfg, zo), cfg, workers);
}

// Sum over T < gamma_{2n} <= 2T of (gamma_{2n} - gamma_{2n-1}), with zeros
// numbered from gamma_1. `shift` = 1 pairs (gamma_{2n+1}, gamma_{2n}) instead,
// the complementary convention.
inline double alternating_gap_sum(const ZeroTable& zeros, double T, int shift = 0) {
  if (zeros.lo > fast_path_floor) throw std::invalid_argument("alternating_gap_sum: zero table must start at t = 10");
  NeumaierSum s;
  // ordinates[i] is gamma_{i+1}.
  for (std::size_t i = 1; i < zeros.size(); ++i) {
    const std::size_t n = i + 1;
    if ((n + static_cast<std::size_t>(shift)) % 2 != 0) continue;
    const double g = zeros.ordinates[i];
    if (g > T && g <= 2.0 * T) s += g - zeros.ordinates[i - 1];
  }
  return s.value();
}

// The measure of {Z > 0} on [T, 2T] against the alternating gap sum. Needs a
// table from t = 10 to at least 2T so the zero index (and hence the parity) is
// global.
inline MomentReport alternating_gap_identity(double T, const ZeroTable& zeros, const EvalConfig& cfg = {},
                                             unsigned workers = 1) {
  detail::check_window_base(T, "alternating_gap_identity");
  if (zeros.lo > fast_path_floor || zeros.hi < 2.0 * T) {
    throw std::invalid_argument("alternating_gap_identity: zero table must cover [10, 2T]");
  }
  const auto jm = j_measures(T, zeros, cfg, workers);
  return MomentReport::compared(T, jm.plus, alternating_gap_sum(zeros, T), "mu{T<t<=2T: Z>0} vs sum of (gamma_2n - gamma_2n-1)");
}

// Largest gap between consecutive zeros touching [T, 2T], including the gaps
// that straddle the window ends.
inline double max_window_gap(const ZeroTable& zeros, double T) {
  std::size_t i = zeros.lower_index(T);
  const std::size_t end = std::min(zeros.size(), zeros.lower_index(2.0 * T) + 1);
  double g = 0.0;
  for (i = std::max<std::size_t>(i, 1); i < end; ++i) g = std::max(g, zeros.ordinates[i] - zeros.ordinates[i - 1]);
  return g;
}

// Gap straddling T plus gap straddling 2T: the most the alternating gap sum
// can differ from the measure through boundary effects.
inline double boundary_gap_allowance(const ZeroTable& zeros, double T) {
  const std::size_t first = zeros.lower_index(T);
  const std::size_t after = zeros.lower_index(2.0 * T);
  if (first == 0 || after >= zeros.size() || after == 0) {
    throw std::invalid_argument("boundary_gap_allowance: table must extend beyond both window ends");
  }
  return (zeros.ordinates[first] - zeros.ordinates[first - 1]) + (zeros.ordinates[after] - zeros.ordinates[after - 1]);
}

// mu{t in (10, T] : |Z(t)| <= c} by sampling at step <= 0.01/log T and
// bisecting every level crossing.
inline MomentReport small_values_measure(double T, double c, double tol, const EvalConfig& cfg = {}, unsigned workers = 1) {
  if (!(T >= 100.0)) throw std::invalid_argument("small_values_measure: requires T >= 100");
  if (!(c > 0.0)) throw std::invalid_argument("small_values_measure: requires c > 0");
  const double lo = fast_path_floor;
  const double step_max = 0.01 / std::log(T);
  const auto n = static_cast<std::size_t>(std::ceil((T - lo) / step_max));
  const double h = (T - lo) / static_cast<double>(n);
  const auto node = [&](std::size_t j) { return j == n ? T : lo + static_cast<double>(j) * h; };
  const auto inside = [&](double t) { return std::abs(hardy_z(t, cfg)) <= c; };

  constexpr std::size_t block = 1 << 16;
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, workers, [&](std::size_t bi) {
    const std::size_t j0 = bi * block, j1 = std::min(n, j0 + block);
    NeumaierSum s;
    bool prev = inside(node(j0));
    for (std::size_t j = j0; j < j1; ++j) {
      const double a = node(j), b = node(j + 1);
      const bool next = inside(b);
      if (prev && next) {
        s += b - a;
      } else if (prev != next) {
        double x0 = a, x1 = b;
        while (x1 - x0 > tol) {
          const double m = 0.5 * (x0 + x1);
          if (inside(m) == prev) x0 = m; else x1 = m;
        }
        const double cross = 0.5 * (x0 + x1);
        s += prev ? cross - a : b - cross;
      }
      prev = next;
    }
    partial[bi] = s.value();
  });
  return MomentReport::compared(T, compensated_sum(partial), 0.5 * T, "mu{10<t<=T: |Z|<=c} vs T/2");
}

struct OneSidedCubic {
  MomentReport plus;   // integral of Z^3 over Z > 0
  MomentReport minus;  // integral of Z^3 over Z < 0 (negative)
  QuadResult cube;      // integral of Z^3
  QuadResult abs_cube;  // integral of |Z|^3
};

// Each side is compared with half of the integral of |Z|^3, carrying the sign
// of its side.
inline OneSidedCubic one_sided_cubic(double T, double tol, const ZeroTable& zeros, const EvalConfig& cfg = {},
                                     const QuadOptions& opts = {}) {
  detail::check_window_base(T, "one_sided_cubic");
  const Integrand g[] = {Integrand::of(IntegrandKind::z_cubed), Integrand::of(IntegrandKind::abs_z_cubed)};
  const auto r = integrate_split(g, T, 2.0 * T, tol, &zeros, cfg, opts);
  const double half_abs = 0.5 * r.total[1].value;
  OneSidedCubic out;
  out.plus = MomentReport::compared(T, r.plus[0].value, half_abs, "int_{Z>0} Z^3 vs (1/2) int |Z|^3");
  out.minus = MomentReport::compared(T, r.minus[0].value, -half_abs, "int_{Z<0} Z^3 vs -(1/2) int |Z|^3");
  out.cube = r.total[0];
  out.abs_cube = r.total[1];
  return out;
}

inline OneSidedCubic one_sided_cubic(double T, double tol, const EvalConfig& cfg = {}, const QuadOptions& opts = {}) {
  detail::check_window_base(T, "one_sided_cubic");
  return one_sided_cubic(T, tol, detail::window_zeros(T, 2.0 * T, cfg, opts.workers), cfg, opts);
}

// ---------------------------------------------------------------------------
// log|Z| / sqrt((1/2) log log T) for t uniform in [T, 2T]

struct Histogram {
  std::vector<double> edges;  // bins [edges[i], edges[i+1]); values outside go to the end bins
  std::vector<std::uint64_t> counts;
};

struct CltSample {
  double T = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> t;
  std::vector<double> x;
  std::size_t resampled = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double ks_distance = 0.0;
  Histogram histogram;
};

inline constexpr double clt_zero_guard = 1e-6;

inline Histogram make_histogram(const std::vector<double>& x, double lo = -4.0, double hi = 4.0, int bins = 32) {
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i <= bins; ++i) h.edges[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : x) {
    int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
    b = std::clamp(b, 0, bins - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

inline CltSample selberg_clt_sample(double T, std::size_t n_samples, std::uint64_t rng_seed, const EvalConfig& cfg = {},
                                    unsigned workers = 1) {
  if (!(T >= 1e3)) throw std::invalid_argument("selberg_clt_sample: requires T >= 1e3");
  if (n_samples < 1000) throw std::invalid_argument("selberg_clt_sample: requires n_samples >= 1000");
  const CounterRng rng(rng_seed);
  const double scale = std::sqrt(0.5 * std::log(std::log(T)));
  CltSample out;
  out.T = T;
  out.seed = rng_seed;
  out.t.resize(n_samples);
  out.x.resize(n_samples);
  std::vector<std::uint8_t> retries(n_samples, 0);
  parallel_for(n_samples, workers, [&](std::size_t i) {
    for (std::uint64_t attempt = 0;; ++attempt) {
      const double t = T + T * rng.uniform(attempt, i);
      const double z = hardy_z(t, cfg);
      if (std::abs(z) < clt_zero_guard) continue;
      out.t[i] = t;
      out.x[i] = std::log(std::abs(z)) / scale;
      retries[i] = static_cast<std::uint8_t>(std::min<std::uint64_t>(attempt, 255));
      return;
    }
  });
  for (auto r : retries) out.resampled += r;
  NeumaierSum s, s2;
  for (double v : out.x) s += v;
  out.mean = s.value() / static_cast<double>(n_samples);
  for (double v : out.x) s2 += (v - out.mean) * (v - out.mean);
  out.stddev = std::sqrt(s2.value() / static_cast<double>(n_samples - 1));
  out.ks_distance = ks_distance_normal(out.x);
  out.histogram = make_histogram(out.x);
  return out;
}

// int_T^{2T} |Z| / (T (log T)^{1/4}).
inline double abs_mean_ratio(double abs_integral, double T) { return abs_integral / (T * std::pow(std::log(T), 0.25)); }

}  // namespace hardy
