// constants.hpp
//
// Euler's constant and the moment constants c = a g / Gamma(1 + m^2) for
// int_0^T |zeta(1/2+it)|^(2m) ~ c T (log T)^(m^2).
//
// Index convention: m is the half-moment index (k = 2m). Tables that print
// these constants carry `normalization_tag`.
//
// Local Euler factor at x = 1/p:
//   (1-x)^(m^2) sum_j C(j+m-1, m-1)^2 x^j = (1-x)^((m-1)^2) N_m(x),
//   N_m(x) = sum_{i<m} C(m-1, i)^2 x^i.

#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/mp.hpp"
#include "hardy/numeric.hpp"

namespace hardy {

inline constexpr const char* normalization_tag = "m=k/2: c_{2m} = a_m g_m / Gamma(1+m^2) against T (log T)^(m^2)";

namespace detail {

// B_0 .. B_n from exact rationals (Akiyama-Tanigawa), rounded to `prec` bits.
// The recurrence yields B_1 = +1/2; only even indices are used here.
inline std::vector<mp::Real> bernoulli_numbers(int n, mpfr_prec_t prec) {
  std::vector<mpq_t> a(static_cast<std::size_t>(n) + 1);
  for (auto& q : a) mpq_init(q);
  std::vector<mp::Real> out;
  mpq_t tmp;
  mpq_init(tmp);
  for (int m = 0; m <= n; ++m) {
    mpq_set_ui(a[m], 1, static_cast<unsigned long>(m) + 1);
    for (int j = m; j >= 1; --j) {
      mpq_sub(tmp, a[j - 1], a[j]);
      mpq_set_ui(a[j - 1], static_cast<unsigned long>(j), 1);
      mpq_mul(a[j - 1], a[j - 1], tmp);
    }
    mp::Real b(prec);
    mpfr_set_q(b.get(), a[0], MPFR_RNDN);
    out.push_back(std::move(b));
  }
  mpq_clear(tmp);
  for (auto& q : a) mpq_clear(q);
  return out;
}

}  // namespace detail

// gamma = H_n - log n - 1/(2n) + sum_{k>=1} B_2k / (2k n^2k) (asymptotic; truncated
// once the terms fall below 10^-(digits+5)).
inline mp::Real euler_constant(int precision_digits) {
  if (precision_digits < 15) throw std::invalid_argument("euler_constant: requires precision >= 15 digits");
  const mpfr_prec_t prec = mp::bits_for_digits(precision_digits + 10);
  const unsigned long n = static_cast<unsigned long>(precision_digits) + 10;
  const int kmax = precision_digits + 10;
  const auto bern = detail::bernoulli_numbers(2 * kmax, prec);

  mp::Real h(prec, 0.0), one(prec, 1.0), tmp(prec);
  for (unsigned long j = 1; j <= n; ++j) {
    mpfr_div_ui(tmp.get(), one.get(), j, MPFR_RNDN);
    h += tmp;
  }
  mp::Real nn(prec, static_cast<double>(n));
  mp::Real g = h - mp::log(nn);
  mpfr_div_ui(tmp.get(), one.get(), 2 * n, MPFR_RNDN);
  g -= tmp;

  const mp::Real eps = mp::pow_si(mp::Real(prec, 10.0), -(precision_digits + 5));
  mp::Real npow(prec, 1.0), term(prec);
  const mp::Real n2 = nn * nn;
  for (int k = 1; k <= kmax; ++k) {
    npow *= n2;
    term = bern[static_cast<std::size_t>(2 * k)] / npow;
    mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    g += term;
    if (mpfr_cmpabs(term.get(), eps.get()) < 0) break;
  }
  return g;
}

// MPFR's built-in constant, the second method.
inline mp::Real euler_constant_reference(int precision_digits) {
  mp::Real r(mp::bits_for_digits(precision_digits + 10));
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

inline double euler_c0() {
  static const double c0 = euler_constant(20).to_double();
  return c0;
}

// ---------------------------------------------------------------------------

struct MomentConstant {
  int m = 1;
  double a = 1.0;
  double g = 1.0;
  double c = 1.0;
  std::uint64_t prime_cutoff = 0;
  // Bound on |a - a(prime_cutoff)|; c carries the same bound times g / Gamma(1+m^2).
  double tail_bound = 0.0;
  std::string normalization = normalization_tag;
};

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// N_m(x) - 1.
inline double ks_numerator_minus_one(int m, double x) {
  double s = 0.0, xp = 1.0;
  for (int i = 1; i < m; ++i) {
    xp *= x;
    const double c = binomial(m - 1, i);
    s += c * c * xp;
  }
  return s;
}

inline double ks_local_factor(int m, double x) {
  return std::pow(1.0 - x, (m - 1) * (m - 1)) * (1.0 + ks_numerator_minus_one(m, x));
}

// Truncated series (1-x)^(m^2) sum_{j<=jmax} C(j+m-1, m-1)^2 x^j.
inline double ks_local_factor_series(int m, double x, int jmax) {
  NeumaierSum s;
  double xp = 1.0;
  for (int j = 0; j <= jmax; ++j) {
    const double d = binomial(j + m - 1, m - 1);
    s += d * d * xp;
    xp *= x;
  }
  return std::pow(1.0 - x, m * m) * s.value();
}

// (m^2)! prod_{j<m} j!/(j+m)!
inline double ks_g(int m) {
  double g = std::tgamma(static_cast<double>(m * m) + 1.0);
  for (int j = 0; j < m; ++j) g *= std::tgamma(j + 1.0) / std::tgamma(j + m + 1.0);
  return std::round(g);
}

inline MomentConstant ks_constant(int m, std::uint64_t prime_cutoff = 1'000'000) {
  if (m < 1) throw std::invalid_argument("ks_constant: requires m >= 1");
  if (m > 4) throw std::overflow_error("ks_constant: m > 4 is outside the supported range");
  if (prime_cutoff < 1000) throw std::invalid_argument("ks_constant: requires prime_cutoff >= 1000");

  // log local = (m-1)^2 log1p(-x) + log1p(N_m(x) - 1), summed over primes.
  std::vector<char> composite(prime_cutoff + 1, 0);
  NeumaierSum log_a;
  const int e = (m - 1) * (m - 1);
  for (std::uint64_t p = 2; p <= prime_cutoff; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t q = p * p; q <= prime_cutoff; q += p) composite[q] = 1;
    const double x = 1.0 / static_cast<double>(p);
    log_a += e * std::log1p(-x) + std::log1p(ks_numerator_minus_one(m, x));
  }

  // log local(x) = kappa x^2 + O(x^3); the x^3 allowance m^6 x covers the rest
  // for x <= 1e-3, and sum_{p>P} p^-2 < 1/P.
  const double a1 = static_cast<double>(e);
  const double a2 = binomial(m - 1, 2) * binomial(m - 1, 2);
  const double kappa = a2 - 0.5 * a1 * a1 - 0.5 * a1;
  const double P = static_cast<double>(prime_cutoff);
  const double log_tail = (std::abs(kappa) + std::pow(m, 6) / P) / P;

  MomentConstant mc;
  mc.m = m;
  mc.prime_cutoff = prime_cutoff;
  mc.a = std::exp(log_a.value());
  mc.tail_bound = m == 1 ? 0.0 : mc.a * std::expm1(log_tail);
  mc.g = ks_g(m);
  mc.c = mc.a * mc.g / std::tgamma(static_cast<double>(m * m) + 1.0);
  return mc;
}

// c T (log T)^(m^2).
inline double conjectured_moment(int m, double T, std::uint64_t prime_cutoff = 1'000'000) {
  if (!(T > 1.0)) throw std::domain_error("conjectured_moment: requires T > 1");
  const auto mc = ks_constant(m, prime_cutoff);
  return mc.c * T * std::pow(std::log(T), m * m);
}

}  // namespace hardy
