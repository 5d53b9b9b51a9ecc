// jutila.hpp
//
// The oscillating main term F1(T) of F(T) = int_0^T Z, its step function K,
// the Fourier series u(x) = (-1)^floor(x) K({x}), and two routes to the
// primitive of F1: exact integration of the piecewise t^(1/4) form and the
// cosine series with its truncation bound.
//
// `frac` is the fractional part of sqrt(T/2pi); it is unrelated to theta(t).

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "hardy/numeric.hpp"

namespace hardy {

inline double k_step(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("k_step: x must lie in [0, 1]");
  if (x == 0.25) return 4.0 * pi / 3.0;
  if (x == 0.75) return 2.0 * pi / 3.0;
  return (x > 0.25 && x < 0.75) ? two_pi : 0.0;
}

struct JutilaDecomposition {
  double T = 0.0;
  std::int64_t L = 0;
  double frac = 0.0;
  double theta0 = 0.0;
  double main = 0.0;
  double error_scale = 0.0;
  double near_edge_scale = 0.0;
  // theta0 == 0: frac sits exactly on 1/4 or 3/4 and the error scale is not
  // covered by the estimate.
  bool edge = false;

  double envelope() const { return error_scale + near_edge_scale; }
};

namespace detail {

struct SqrtSplit {
  std::int64_t L;
  double frac;
};

inline SqrtSplit split_sqrt(double T) {
  const double x = std::sqrt(T / two_pi);
  const double L = std::floor(x);
  return {static_cast<std::int64_t>(L), x - L};
}

inline double parity_sign(std::int64_t L) { return (L % 2 == 0) ? 1.0 : -1.0; }

}  // namespace detail

inline double f1(double T) {
  if (!(T > 0.0)) throw std::domain_error("f1: requires T > 0");
  const auto [L, frac] = detail::split_sqrt(T);
  return std::pow(T / two_pi, 0.25) * detail::parity_sign(L) * k_step(frac);
}

inline JutilaDecomposition predict_F(double T) {
  if (!(T >= 10.0)) throw std::domain_error("predict_F: requires T >= 10");
  const auto [L, frac] = detail::split_sqrt(T);
  JutilaDecomposition d;
  d.T = T;
  d.L = L;
  d.frac = frac;
  d.theta0 = std::min(std::abs(frac - 0.25), std::abs(frac - 0.75));
  d.main = f1(T);
  d.error_scale = std::pow(T, 1.0 / 6.0) * std::log(T);
  d.edge = d.theta0 == 0.0;
  const double quarter = std::pow(T, 0.25);
  d.near_edge_scale = d.edge ? quarter : std::min(quarter, std::pow(T, 0.125) * std::pow(d.theta0, -0.75));
  return d;
}

// a(n) = cos(pi n/4) - cos(3 pi n/4): 0 for even n, +sqrt2 for n = 1, 7 (mod 8),
// -sqrt2 for n = 3, 5 (mod 8).
inline double fourier_a(std::int64_t n) {
  if (n % 2 == 0) return 0.0;
  const auto r = ((n % 8) + 8) % 8;
  return (r == 1 || r == 7) ? std::numbers::sqrt2 : -std::numbers::sqrt2;
}

// 4 sum a(n)/n sin(pi n x) over the first `terms` odd n.
inline double u_fourier(double x, std::int64_t terms) {
  if (terms < 1) throw std::invalid_argument("u_fourier: requires terms >= 1");
  NeumaierSum s;
  for (std::int64_t k = 1; k <= terms; ++k) {
    const std::int64_t n = 2 * k - 1;
    s += fourier_a(n) / static_cast<double>(n) * std::sin(pi * static_cast<double>(n) * x);
  }
  return 4.0 * s.value();
}

// (-1)^floor(x) K({x}), the pointwise limit of u_fourier away from x = +-1/4 mod 1.
inline double u_direct(double x) {
  const double fl = std::floor(x);
  return detail::parity_sign(static_cast<std::int64_t>(fl)) * k_step(x - fl);
}

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

// -16 (T/2pi)^(3/4) sum_{k<=terms} a(2k-1)/(2k-1)^2 cos(pi (2k-1) sqrt(T/2pi)).
inline SeriesValue int_f1_closed_form(double T, std::int64_t terms) {
  if (!(T > 0.0)) throw std::domain_error("int_f1_closed_form: requires T > 0");
  if (terms < 1) throw std::invalid_argument("int_f1_closed_form: requires terms >= 1");
  const double x = std::sqrt(T / two_pi);
  const double xr = x - 2.0 * std::floor(0.5 * x);  // cos(pi n x) has period 2 in x for odd n
  NeumaierSum s;
  for (std::int64_t k = 1; k <= terms; ++k) {
    const std::int64_t n = 2 * k - 1;
    const double nd = static_cast<double>(n);
    s += fourier_a(n) / (nd * nd) * std::cos(pi * nd * xr);
  }
  // sum_{k>K} (2k-1)^-2 < 1/(2(2K-1)) + 1/(2K+1)^2
  const double kk = static_cast<double>(terms);
  const double tail_sum = 1.0 / (2.0 * (2.0 * kk - 1.0)) + 1.0 / ((2.0 * kk + 1.0) * (2.0 * kk + 1.0));
  const double scale = 16.0 * std::pow(T / two_pi, 0.75);
  return {-scale * s.value(), scale * std::numbers::sqrt2 * tail_sum};
}

// int_0^T F1 exactly: F1 vanishes off [2pi(L+1/4)^2, 2pi(L+3/4)^2] and equals
// 2pi (-1)^L (t/2pi)^(1/4) on it, whose primitive is (2pi)^(3/4) (4/5) t^(5/4).
inline double int_f1_piecewise(double T) {
  if (!(T >= 0.0)) throw std::domain_error("int_f1_piecewise: requires T >= 0");
  const double c = two_pi * std::pow(two_pi, -0.25) * 0.8;
  const auto prim = [&](double t) { return c * std::pow(t, 1.25); };
  NeumaierSum s;
  for (std::int64_t L = 0;; ++L) {
    const double Ld = static_cast<double>(L);
    const double a = two_pi * (Ld + 0.25) * (Ld + 0.25);
    if (a >= T) break;
    const double b = std::min(T, two_pi * (Ld + 0.75) * (Ld + 0.75));
    s += detail::parity_sign(L) * (prim(b) - prim(a));
  }
  return s.value();
}

// T = 2pi (3/4 + 2m)^2 (positive family) and T = 2pi (1/4 + 2m)^2 (negative).
inline double omega_plus_point(std::int64_t m) {
  const double x = 0.75 + 2.0 * static_cast<double>(m);
  return two_pi * x * x;
}
inline double omega_minus_point(std::int64_t m) {
  const double x = 0.25 + 2.0 * static_cast<double>(m);
  return two_pi * x * x;
}

// sup |piecewise - full series| / T^(1/4): integrating by parts once more leaves
// 24 sum a(n)/n^2 [x^(1/2) sin(pi n x)/(pi n) - (1/(2 pi n)) int_0^x y^(-1/2) sin(pi n y) dy]
// with x = sqrt(T/2pi). The bound below uses |int_0^x y^(-1/2) sin(pi n y) dy| <= 2/sqrt(n).
inline double int_f1_difference_constant(double T_min) {
  const double odd_zeta3 = 0.875 * 1.2020569031595942854;
  const double odd_zeta_35 = 1.0 - std::pow(2.0, -3.5);  // times zeta(3.5), bounded below
  const double zeta_35 = 1.1267338673170566;
  const double lead = 24.0 * std::numbers::sqrt2 / pi * odd_zeta3 * std::pow(two_pi, -0.25);
  const double rest = 24.0 * std::numbers::sqrt2 / (2.0 * pi) * 2.0 * odd_zeta_35 * zeta_35;
  return lead + rest / std::pow(T_min, 0.25);
}

}  // namespace hardy
