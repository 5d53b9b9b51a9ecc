// quad.hpp
//
// Quadrature of g(Z(t)) on zero-aligned Gauss-Legendre panels. Panel edges
// sit on the zeros of Z, so |Z|^k and the sign split are smooth inside every
// panel; each panel is no wider than the mean zero gap at the right end of the
// window and is bisected until the Legendre tail of the integrand is small.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/numeric.hpp"
#include "hardy/special.hpp"
#include "hardy/zeros.hpp"

namespace hardy {

enum class IntegrandKind { z, abs_z, z_squared, z_cubed, abs_z_cubed, z_fourth, abs_z_power };

struct Integrand {
  IntegrandKind kind = IntegrandKind::z;
  double power = 1.0;  // abs_z_power only

  double operator()(double z) const {
    switch (kind) {
      case IntegrandKind::z: return z;
      case IntegrandKind::abs_z: return std::abs(z);
      case IntegrandKind::z_squared: return z * z;
      case IntegrandKind::z_cubed: return z * z * z;
      case IntegrandKind::abs_z_cubed: return std::abs(z * z * z);
      case IntegrandKind::z_fourth: {
        const double s = z * z;
        return s * s;
      }
      case IntegrandKind::abs_z_power: return std::pow(std::abs(z), power);
    }
    return 0.0;
  }

  // |dg/dz|, used to carry the evaluation noise of Z into g.
  double slope(double z) const {
    const double a = std::abs(z);
    switch (kind) {
      case IntegrandKind::z:
      case IntegrandKind::abs_z: return 1.0;
      case IntegrandKind::z_squared: return 2.0 * a;
      case IntegrandKind::z_cubed:
      case IntegrandKind::abs_z_cubed: return 3.0 * a * a;
      case IntegrandKind::z_fourth: return 4.0 * a * a * a;
      case IntegrandKind::abs_z_power: return power == 0.0 ? 0.0 : power * std::pow(std::max(a, 1e-300), power - 1.0);
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind) {
      case IntegrandKind::z: return "Z";
      case IntegrandKind::abs_z: return "|Z|";
      case IntegrandKind::z_squared: return "Z^2";
      case IntegrandKind::z_cubed: return "Z^3";
      case IntegrandKind::abs_z_cubed: return "|Z|^3";
      case IntegrandKind::z_fourth: return "Z^4";
      case IntegrandKind::abs_z_power: return "|Z|^" + std::to_string(power);
    }
    return "?";
  }

  static Integrand of(IntegrandKind k) { return Integrand{k, 1.0}; }
  static Integrand abs_power(double k) {
    if (!(k >= 0.0)) throw std::invalid_argument("Integrand::abs_power: exponent must be >= 0");
    return Integrand{IntegrandKind::abs_z_power, k};
  }
};

// Accepts Z, |Z|, Z^2, Z^3, |Z|^3, Z^4 and |Z|^k for real k.
inline Integrand parse_integrand(const std::string& s) {
  if (s == "Z") return Integrand::of(IntegrandKind::z);
  if (s == "|Z|") return Integrand::of(IntegrandKind::abs_z);
  if (s == "Z^2") return Integrand::of(IntegrandKind::z_squared);
  if (s == "Z^3") return Integrand::of(IntegrandKind::z_cubed);
  if (s == "|Z|^3") return Integrand::of(IntegrandKind::abs_z_cubed);
  if (s == "Z^4") return Integrand::of(IntegrandKind::z_fourth);
  if (s.rfind("|Z|^", 0) == 0) {
    std::size_t used = 0;
    const double k = std::stod(s.substr(4), &used);
    if (used == s.size() - 4) return Integrand::abs_power(k);
  }
  throw std::invalid_argument("unknown integrand '" + s + "'");
}

struct QuadResult {
  double value = 0.0;
  double abs_error_est = 0.0;
  std::size_t panels = 0;
  std::size_t evals = 0;
  // Set when the window meets a suspect zero-table chunk or a panel hit the
  // depth cap; the estimate is then only a lower bound.
  bool error_is_lower_bound = false;
};

struct QuadOptions {
  unsigned workers = 1;
  int max_depth = 12;
};

inline constexpr int sub_floor_digits = 30;

// Z for quadrature: oracle at 30 digits below the fast-path floor.
inline double quad_z(double t, const EvalConfig& cfg) {
  if (t >= fast_path_floor) return z_fast(t, cfg).z;
  return z_oracle(t, sub_floor_digits).z;
}

inline double max_panel_width(double b) { return two_pi / std::max(std::log(b / two_pi), 1.0); }

// Panel edges for [a, b]: zeros inside, t = 10 when straddled, the points
// 2 pi m^2, then uniform subdivision of each piece down to
// max_panel_width(b).
inline std::vector<double> panel_edges(double a, double b, const ZeroTable* zeros) {
  std::vector<double> cuts{a};
  if (a < fast_path_floor && b > fast_path_floor) cuts.push_back(fast_path_floor);
  if (zeros != nullptr && b > fast_path_floor) {
    const double zlo = std::max(a, fast_path_floor);
    if (!zeros->covers(zlo, b)) throw std::invalid_argument("panel_edges: zero table does not cover the window");
    const auto first = std::upper_bound(zeros->ordinates.begin(), zeros->ordinates.end(), a);
    const auto last = std::lower_bound(zeros->ordinates.begin(), zeros->ordinates.end(), b);
    for (auto it = first; it != last; ++it) {
      if (*it > cuts.back()) cuts.push_back(*it);
    }
  }
  // The fast path gains a main-sum term at t = 2 pi m^2 and jumps there by
  // about its truncation error.
  if (b > fast_path_floor) {
    const double from = std::max(a, fast_path_floor);
    for (auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(from / two_pi))); ; ++m) {
      const double tm = two_pi * static_cast<double>(m) * static_cast<double>(m);
      if (tm >= b) break;
      if (tm > from) cuts.push_back(tm);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);
  const double hmax = max_panel_width(b);
  std::vector<double> edges{a};
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double lo = cuts[i - 1], hi = cuts[i];
    if (!(hi > lo)) continue;
    const auto pieces = static_cast<std::size_t>(std::ceil((hi - lo) / hmax));
    for (std::size_t j = 1; j < pieces; ++j) edges.push_back(lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(pieces));
    edges.push_back(hi);
  }
  return edges;
}

namespace detail {

struct LeafPanel {
  double a;
  double b;
  std::vector<LegendreCoeffs> coeffs;  // one per integrand
};

struct PanelSums {
  std::vector<double> value;
  std::vector<double> err;
  double z_integral = 0.0;
  std::size_t leaves = 0;
  std::size_t evals = 0;
  bool capped = false;
};

// Adaptive bisection of one panel. Leaves are reported in increasing t.
template <class OnLeaf>
void refine_panel(std::span<const Integrand> g, double a, double b, double tol, const EvalConfig& cfg, int depth,
                  int max_depth, PanelSums& acc, const OnLeaf& on_leaf) {
  const auto& rule = gauss_legendre_16();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::array<double, gl_order> z{};
  for (int i = 0; i < gl_order; ++i) z[i] = quad_z(mid + half * rule.x[i], cfg);
  acc.evals += gl_order;

  // Below this level the Legendre tail is evaluation noise and splitting
  // cannot reduce it.
  const double dz = mid >= fast_path_floor ? z_fast_roundoff(b) : 0.0;

  const std::size_t nk = g.size();
  std::vector<LegendreCoeffs> coeffs(nk);
  std::vector<double> val(nk), est(nk);
  bool ok = true;
  for (std::size_t k = 0; k < nk; ++k) {
    std::array<double, gl_order> s{};
    double v = 0.0, mag = 0.0, slope = 0.0;
    for (int i = 0; i < gl_order; ++i) {
      s[i] = g[k](z[i]);
      v += rule.w[i] * s[i];
      mag += rule.w[i] * std::abs(s[i]);
      slope = std::max(slope, g[k].slope(z[i]));
    }
    coeffs[k] = legendre_coefficients(s);
    val[k] = v * half;
    est[k] = (b - a) * (std::abs(coeffs[k][gl_order - 2]) + std::abs(coeffs[k][gl_order - 1]));
    const double floor = std::max(64.0 * std::numeric_limits<double>::epsilon() * mag * half, 8.0 * (b - a) * slope * dz);
    if (est[k] > std::max(tol * (b - a), floor)) ok = false;
  }
  if (!ok && depth < max_depth) {
    refine_panel(g, a, mid, tol, cfg, depth + 1, max_depth, acc, on_leaf);
    refine_panel(g, mid, b, tol, cfg, depth + 1, max_depth, acc, on_leaf);
    return;
  }
  if (!ok) acc.capped = true;
  double zint = 0.0;
  for (int i = 0; i < gl_order; ++i) zint += rule.w[i] * z[i];
  acc.z_integral += zint * half;
  for (std::size_t k = 0; k < nk; ++k) {
    acc.value[k] += val[k];
    acc.err[k] += est[k];
  }
  ++acc.leaves;
  on_leaf(a, b, coeffs);
}

inline bool touches_suspect(const ZeroTable* zeros, double a, double b) {
  if (zeros == nullptr) return false;
  for (const auto& s : zeros->suspect) {
    if (s.hi > a && s.lo < b) return true;
  }
  return false;
}

inline void check_window(double a, double b, double tol) {
  if (!(a >= 0.0 && a < b)) throw std::invalid_argument("integrate: requires 0 <= a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: requires tol > 0");
}

}  // namespace detail

// Several integrands over one window, each also split by the sign of Z on the
// panel (panels never straddle a zero).
struct SplitIntegrals {
  std::vector<Integrand> integrands;
  std::vector<QuadResult> total;
  std::vector<QuadResult> plus;
  std::vector<QuadResult> minus;
};

inline SplitIntegrals integrate_split(std::span<const Integrand> g, double a, double b, double tol, const ZeroTable* zeros,
                                      const EvalConfig& cfg = {}, const QuadOptions& opts = {}) {
  detail::check_window(a, b, tol);
  cfg.validate();
  const auto edges = panel_edges(a, b, zeros);
  const std::size_t np = edges.size() - 1;
  const std::size_t nk = g.size();
  std::vector<detail::PanelSums> sums(np);
  parallel_for(np, opts.workers, [&](std::size_t p) {
    auto& acc = sums[p];
    acc.value.assign(nk, 0.0);
    acc.err.assign(nk, 0.0);
    detail::refine_panel(g, edges[p], edges[p + 1], tol, cfg, 0, opts.max_depth, acc,
                         [](double, double, const std::vector<LegendreCoeffs>&) {});
  });

  SplitIntegrals out;
  out.integrands.assign(g.begin(), g.end());
  out.total.resize(nk);
  out.plus.resize(nk);
  out.minus.resize(nk);
  const bool lower = detail::touches_suspect(zeros, a, b);
  for (std::size_t k = 0; k < nk; ++k) {
    NeumaierSum tv, pv, mv, te, pe, me;
    std::size_t tp = 0, pp = 0, mp = 0, ev = 0;
    bool capped = false;
    for (const auto& s : sums) {
      tv += s.value[k];
      te += s.err[k];
      tp += s.leaves;
      ev += s.evals;
      capped = capped || s.capped;
      if (s.z_integral >= 0.0) {
        pv += s.value[k];
        pe += s.err[k];
        pp += s.leaves;
      } else {
        mv += s.value[k];
        me += s.err[k];
        mp += s.leaves;
      }
    }
    out.total[k] = QuadResult{tv.value(), te.value(), tp, ev, lower || capped};
    out.plus[k] = QuadResult{pv.value(), pe.value(), pp, ev, lower || capped};
    out.minus[k] = QuadResult{mv.value(), me.value(), mp, ev, lower || capped};
  }
  return out;
}

inline QuadResult integrate(const Integrand& g, double a, double b, double tol, const ZeroTable& zeros,
                            const EvalConfig& cfg = {}, const QuadOptions& opts = {}) {
  const Integrand one[] = {g};
  return integrate_split(one, a, b, tol, &zeros, cfg, opts).total[0];
}

inline constexpr double quad_zero_tol = 1e-10;

// Builds its own zero table for the part of the window above t = 10.
inline QuadResult integrate(const Integrand& g, double a, double b, double tol, const EvalConfig& cfg = {},
                            const QuadOptions& opts = {}) {
  detail::check_window(a, b, tol);
  if (b <= fast_path_floor) {
    const Integrand one[] = {g};
    return integrate_split(one, a, b, tol, nullptr, cfg, opts).total[0];
  }
  ZeroSearchOptions zo;
  zo.workers = opts.workers;
  const ZeroTable zeros = find_zeros(std::max(a, fast_path_floor), b, quad_zero_tol, cfg, zo);
  return integrate(g, a, b, tol, zeros, cfg, opts);
}

// ---------------------------------------------------------------------------
// Sign partition

struct SignPartition {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> breakpoints;
  std::vector<int> signs;  // +1 / -1, one per piece
  bool suspect = false;

  double piece_lo(std::size_t i) const { return i == 0 ? a : breakpoints[i - 1]; }
  double piece_hi(std::size_t i) const { return i == breakpoints.size() ? b : breakpoints[i]; }

  double measure(int sign) const {
    NeumaierSum s;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (signs[i] == sign) s += piece_hi(i) - piece_lo(i);
    }
    return s.value();
  }
};

inline SignPartition sign_partition(double a, double b, const ZeroTable& zeros, const EvalConfig& cfg = {},
                                    unsigned workers = 1) {
  if (!(a >= fast_path_floor && a < b)) throw std::invalid_argument("sign_partition: requires 10 <= a < b");
  if (!zeros.covers(a, b)) throw std::invalid_argument("sign_partition: zero table does not cover the window");
  SignPartition p;
  p.a = a;
  p.b = b;
  const auto first = std::upper_bound(zeros.ordinates.begin(), zeros.ordinates.end(), a);
  const auto last = std::lower_bound(zeros.ordinates.begin(), zeros.ordinates.end(), b);
  p.breakpoints.assign(first, last);
  p.signs.resize(p.breakpoints.size() + 1);
  parallel_for(p.signs.size(), workers, [&](std::size_t i) {
    p.signs[i] = hardy_z(0.5 * (p.piece_lo(i) + p.piece_hi(i)), cfg) < 0.0 ? -1 : 1;
  });
  p.suspect = detail::touches_suspect(&zeros, a, b);
  return p;
}

inline SignPartition sign_partition(double a, double b, const EvalConfig& cfg = {}, unsigned workers = 1) {
  ZeroSearchOptions zo;
  zo.workers = workers;
  return sign_partition(a, b, find_zeros(a, b, quad_zero_tol, cfg, zo), cfg, workers);
}

// ---------------------------------------------------------------------------
// Running integrals on [0, T_end]: every leaf panel keeps the Legendre series
// of each integrand, so the primitive is available at any t in one lookup.

class PrefixIntegral {
 public:
  PrefixIntegral(std::span<const Integrand> g, double t_end, double tol, const ZeroTable& zeros, const EvalConfig& cfg = {},
                 const QuadOptions& opts = {})
      : integrands_(g.begin(), g.end()), tol_(tol) {
    detail::check_window(0.0, t_end, tol);
    cfg.validate();
    const auto edges = panel_edges(0.0, t_end, &zeros);
    const std::size_t np = edges.size() - 1;
    const std::size_t nk = g.size();
    std::vector<std::vector<detail::LeafPanel>> leaves(np);
    std::vector<detail::PanelSums> sums(np);
    parallel_for(np, opts.workers, [&](std::size_t p) {
      auto& acc = sums[p];
      acc.value.assign(nk, 0.0);
      acc.err.assign(nk, 0.0);
      detail::refine_panel(g, edges[p], edges[p + 1], tol, cfg, 0, opts.max_depth, acc,
                           [&](double a, double b, const std::vector<LegendreCoeffs>& c) {
                             leaves[p].push_back({a, b, c});
                           });
    });
    lower_bound_only_ = detail::touches_suspect(&zeros, 0.0, t_end);
    coeffs_.resize(nk);
    cumulative_.assign(nk, {});
    err_cumulative_.assign(nk, {});
    std::vector<NeumaierSum> run(nk), run_err(nk);
    for (std::size_t p = 0; p < np; ++p) {
      evals_ += sums[p].evals;
      lower_bound_only_ = lower_bound_only_ || sums[p].capped;
      for (auto& leaf : leaves[p]) {
        starts_.push_back(leaf.a);
        const double half = 0.5 * (leaf.b - leaf.a);
        for (std::size_t k = 0; k < nk; ++k) {
          cumulative_[k].push_back(run[k].value());
          err_cumulative_[k].push_back(run_err[k].value());
          run[k] += 2.0 * half * leaf.coeffs[k][0];
          run_err[k] += (leaf.b - leaf.a) *
                        (std::abs(leaf.coeffs[k][gl_order - 2]) + std::abs(leaf.coeffs[k][gl_order - 1]));
          coeffs_[k].push_back(leaf.coeffs[k]);
        }
      }
      leaves[p].clear();
      leaves[p].shrink_to_fit();
    }
    starts_.push_back(t_end);
    for (std::size_t k = 0; k < nk; ++k) {
      cumulative_[k].push_back(run[k].value());
      err_cumulative_[k].push_back(run_err[k].value());
    }
  }

  double t_end() const { return starts_.back(); }
  double tol() const { return tol_; }
  std::size_t panels() const { return starts_.size() - 1; }
  std::size_t evals() const { return evals_; }
  bool error_is_lower_bound() const { return lower_bound_only_; }
  const std::vector<Integrand>& integrands() const { return integrands_; }

  std::size_t index_of(IntegrandKind kind) const {
    for (std::size_t k = 0; k < integrands_.size(); ++k) {
      if (integrands_[k].kind == kind) return k;
    }
    throw std::invalid_argument("PrefixIntegral: integrand not tracked");
  }

  // int_0^t g_k.
  double at(std::size_t k, double t) const {
    const std::size_t p = panel_of(t);
    const double a = starts_[p], b = starts_[p + 1];
    if (t >= b) return cumulative_[k][p + 1];
    const double u = (2.0 * t - a - b) / (b - a);
    return cumulative_[k][p] + 0.5 * (b - a) * legendre_antiderivative(coeffs_[k][p], u);
  }

  // Integrand value reconstructed from the panel series.
  double integrand_at(std::size_t k, double t) const {
    const std::size_t p = panel_of(t);
    const double a = starts_[p], b = starts_[p + 1];
    return legendre_series(coeffs_[k][p], (2.0 * t - a - b) / (b - a));
  }

  // Accumulated per-panel error estimate up to t.
  double error_at(std::size_t k, double t) const {
    const std::size_t p = panel_of(t);
    return err_cumulative_[k][std::min(p + 1, panels())];
  }

  std::size_t panel_of(double t) const {
    if (!(t >= 0.0 && t <= t_end())) throw std::out_of_range("PrefixIntegral: t outside [0, t_end]");
    auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
    const auto idx = static_cast<std::size_t>(it - starts_.begin());
    return std::min(idx == 0 ? 0 : idx - 1, panels() - 1);
  }
  double panel_start(std::size_t p) const { return starts_[p]; }

 private:
  std::vector<Integrand> integrands_;
  double tol_;
  std::vector<double> starts_;
  std::vector<std::vector<LegendreCoeffs>> coeffs_;
  std::vector<std::vector<double>> cumulative_;
  std::vector<std::vector<double>> err_cumulative_;
  std::size_t evals_ = 0;
  bool lower_bound_only_ = false;
};

}  // namespace hardy
