// Reference computations used only by the tests. Each one takes a different
// route from the library code it checks.
#pragma once

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "hardy/mp.hpp"

namespace oracle {

// log Gamma(z) for Re z > 0 in long double: shift by 16, then Stirling with
// eight Bernoulli terms.
inline std::complex<long double> log_gamma(std::complex<long double> z) {
  std::complex<long double> shift = 0.0L;
  while (std::abs(z) < 32.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  static const long double b[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66, -691.0L / 2730, 7.0L / 6, -3617.0L / 510};
  const long double half_log_2pi = 0.91893853320467274178032973640561764L;
  std::complex<long double> s = (z - 0.5L) * std::log(z) - z + half_log_2pi;
  std::complex<long double> zp = z;
  const std::complex<long double> z2 = z * z;
  for (int k = 1; k <= 8; ++k) {
    s += b[k - 1] / (static_cast<long double>(2 * k) * (2 * k - 1) * zp);
    zp *= z2;
  }
  return s - shift;
}

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t.
inline long double theta(long double t) {
  const long double pi = 3.14159265358979323846264338327950288L;
  return std::imag(log_gamma({0.25L, 0.5L * t})) - 0.5L * t * std::log(pi);
}

// zeta(1/2 + it) through the alternating eta series with Borwein's
// acceleration, then Z = Re(exp(i theta) zeta) with theta from the series
// above. Good to ~25 digits for |t| <= 60.
inline double hardy_z_borwein(double t) {
  using hardy::mp::Real;
  const mpfr_prec_t prec = 700;
  const int n = 140;
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<Real> d(static_cast<std::size_t>(n) + 1, Real(prec));
  Real term(prec, 1.0 / n);  // i = 0: (n-1)!/n! = 1/n
  Real acc(prec, 0.0);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      // term_i / term_{i-1} = (n+i-1)(n-i+1) 4 / ((2i)(2i-1))
      mpfr_mul_ui(term.get(), term.get(), static_cast<unsigned long>((n + i - 1) * (n - i + 1)) * 4, MPFR_RNDN);
      mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>((2 * i) * (2 * i - 1)), MPFR_RNDN);
    }
    acc += term;
    d[static_cast<std::size_t>(i)] = acc;
    mpfr_mul_ui(d[static_cast<std::size_t>(i)].get(), acc.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  }
  // sum (-1)^k (d_k - d_n) (k+1)^(-1/2 - it)
  Real re(prec, 0.0), im(prec, 0.0), lk(prec), mag(prec), ph(prec), c(prec);
  const Real tt(prec, t);
  for (int k = 0; k < n; ++k) {
    mpfr_set_ui(lk.get(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
    lk = hardy::mp::log(lk);
    Real w = d[static_cast<std::size_t>(k)] - d[static_cast<std::size_t>(n)];
    if (k % 2 == 1) w = -w;
    mag = hardy::mp::exp(-(lk * Real(prec, 0.5)));
    ph = -(tt * lk);
    c = w * mag;
    re += c * hardy::mp::cos(ph);
    im += c * hardy::mp::sin(ph);
  }
  // eta = -(re + i im)/d_n ; zeta = eta / (1 - 2^(1/2 - it))
  Real scale = -(Real(prec, 1.0) / d[static_cast<std::size_t>(n)]);
  re *= scale;
  im *= scale;
  Real l2(prec, 2.0);
  l2 = hardy::mp::log(l2);
  const Real m2 = hardy::mp::sqrt(Real(prec, 2.0));
  const Real ang = -(tt * l2);
  const Real dre = Real(prec, 1.0) - m2 * hardy::mp::cos(ang);
  const Real dim = -(m2 * hardy::mp::sin(ang));
  const Real den = dre * dre + dim * dim;
  const Real zre = (re * dre + im * dim) / den;
  const Real zim = (im * dre - re * dim) / den;
  const double th = static_cast<double>(theta(t));
  return zre.to_double() * std::cos(th) - zim.to_double() * std::sin(th);
}

// d_k(n) by enumerating divisor chains.
inline std::uint64_t divisor_count_brute(int k, std::uint64_t n) {
  if (k == 1) return 1;
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += divisor_count_brute(k - 1, n / d);
  }
  return s;
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

}  // namespace oracle
