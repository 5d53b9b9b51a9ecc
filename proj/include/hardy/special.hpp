// special.hpp
//
// Hardy's Z-function, Z(t) = exp(i theta(t)) zeta(1/2 + it) on the real line.
//
// Two independent evaluation paths:
//   * z_fast   - Riemann-Siegel main sum plus the remainder series
//                (-1)^(N-1) (t/2pi)^(-1/4) sum_k C_k(p) (t/2pi)^(-k/2),
//                double precision, valid for t >= 10;
//   * z_oracle - Euler-Maclaurin zeta(1/2+it) rotated by the log-Gamma
//                theta at arbitrary precision (see mp.hpp).
// Cross-checking the two is what makes either trustworthy.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/mp.hpp"
#include "hardy/numeric.hpp"

namespace hardy {

struct EvalConfig {
  // Remainder coefficients C_1..C_k used beyond the leading C_0 term.
  int rs_correction_terms = 1;
  int oracle_precision_digits = 30;
  // Terms of the 1/t expansion of theta kept beyond -pi/8.
  int theta_series_terms = 5;

  void validate() const {
    if (rs_correction_terms < 0 || rs_correction_terms > 4) {
      throw std::invalid_argument("EvalConfig: rs_correction_terms must lie in [0, 4]");
    }
    if (oracle_precision_digits < 15) {
      throw std::invalid_argument("EvalConfig: oracle_precision_digits must be >= 15");
    }
    if (theta_series_terms < 2) {
      throw std::invalid_argument("EvalConfig: theta_series_terms must be >= 2");
    }
  }
};

struct ZEvaluation {
  double t = 0.0;
  double z = 0.0;
  double theta = 0.0;
  double err_bound = 0.0;
  // Oracle path only: |Im(exp(i theta) zeta)| which must vanish, and Z at the
  // working precision (`z` is that value rounded to double).
  double imag_residual = 0.0;
  std::string z_digits;
};

inline constexpr double fast_path_floor = 10.0;

namespace detail {

// theta(t) ~ (t/2) log(t/2pi) - t/2 - pi/8 + sum_k (1 - 2^(1-2k)) |B_2k| / (4k(2k-1) t^(2k-1)).
inline const std::array<double, 12>& theta_series_coefficients() {
  static const std::array<double, 12> coeffs = [] {
    std::array<double, 12> c{};
    const mpfr_prec_t prec = 200;
    mp::BernoulliRatios ratios(prec);
    mp::Real fact(prec, 1.0);
    for (int k = 1; k <= 12; ++k) {
      mpfr_mul_ui(fact.get(), fact.get(), static_cast<unsigned long>((2 * k) * (2 * k - 1)), MPFR_RNDN);
      const double b2k = std::abs((ratios.next() * fact).to_double());
      c[static_cast<std::size_t>(k - 1)] =
          (1.0 - std::ldexp(1.0, 1 - 2 * k)) * b2k / (4.0 * k * (2.0 * k - 1.0));
    }
    return c;
  }();
  return coeffs;
}

// Taylor coefficients (in x = p - 1/2) of the Riemann-Siegel remainder
// functions C_0..C_4 built from Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p)
// = -cos(2pi x^2 - 5pi/8) / cos(2pi x). The power series division amplifies
// rounding by roughly 16^n at order 2n, so it runs at 1200 bits once.
inline constexpr int rs_degree = 120;

using RsPolynomials = std::array<std::vector<double>, 5>;

inline const RsPolynomials& rs_polynomials() {
  static const RsPolynomials polys = [] {
    const mpfr_prec_t prec = 1200;
    const int D = rs_degree + 12;
    using mp::Real;
    const Real pi_r = mp::const_pi(prec);
    Real two_pi = pi_r;
    mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);

    // numerator cos(2pi x^2 - 5pi/8) = cos(5pi/8) cos(2pi x^2) + sin(5pi/8) sin(2pi x^2)
    Real five_pi_8 = pi_r;
    mpfr_mul_ui(five_pi_8.get(), five_pi_8.get(), 5, MPFR_RNDN);
    mpfr_div_ui(five_pi_8.get(), five_pi_8.get(), 8, MPFR_RNDN);
    const Real c58 = mp::cos(five_pi_8);
    const Real s58 = mp::sin(five_pi_8);
    std::vector<Real> num(static_cast<std::size_t>(D + 1), Real(prec));
    std::vector<Real> den(static_cast<std::size_t>(D + 1), Real(prec));
    {
      // y = 2pi x^2: cos y = sum (-1)^j y^(2j)/(2j)!, sin y = sum (-1)^j y^(2j+1)/(2j+1)!
      Real term(prec, 1.0);  // (2pi)^m / m!
      for (int m = 0; 2 * m <= D; ++m) {
        if (m > 0) {
          term *= two_pi;
          mpfr_div_ui(term.get(), term.get(), static_cast<unsigned long>(m), MPFR_RNDN);
        }
        const int phase = m % 4;  // cos/sin pattern of y^m
        Real v(prec);
        if (m % 2 == 0) {
          v = c58 * term;
          if (phase == 2) v = -v;
        } else {
          v = s58 * term;
          if (phase == 3) v = -v;
        }
        num[static_cast<std::size_t>(2 * m)] = v;
      }
      // -cos(2pi x) = -sum (-1)^j (2pi)^(2j) x^(2j) / (2j)!
      Real dt(prec, 1.0);
      for (int n = 0; n <= D; ++n) {
        if (n > 0) {
          dt *= two_pi;
          mpfr_div_ui(dt.get(), dt.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        }
        if (n % 2 == 0) {
          Real v = dt;
          if ((n / 2) % 2 == 0) v = -v;
          den[static_cast<std::size_t>(n)] = v;
        }
      }
    }
    std::vector<Real> q(static_cast<std::size_t>(D + 1), Real(prec));
    for (int n = 0; n <= D; ++n) {
      Real acc = num[static_cast<std::size_t>(n)];
      for (int k = 1; k <= n; ++k) {
        acc -= den[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(n - k)];
      }
      q[static_cast<std::size_t>(n)] = acc / den[0];
    }

    // j-th derivative as a polynomial in x
    auto derivative = [&](int j) {
      std::vector<Real> d(static_cast<std::size_t>(rs_degree + 1), Real(prec));
      for (int n = 0; n <= rs_degree; ++n) {
        Real f = q[static_cast<std::size_t>(n + j)];
        for (int i = 1; i <= j; ++i) mpfr_mul_ui(f.get(), f.get(), static_cast<unsigned long>(n + i), MPFR_RNDN);
        d[static_cast<std::size_t>(n)] = f;
      }
      return d;
    };
    auto pi_pow = [&](int e) { return mp::pow_si(pi_r, e); };
    struct Part {
      int deriv;
      double num;
      double den;
      int pi_exp;
    };
    const std::array<std::vector<Part>, 5> recipe = {{
        {{0, 1.0, 1.0, 0}},
        {{3, -1.0, 96.0, 2}},
        {{2, 1.0, 64.0, 2}, {6, 1.0, 18432.0, 4}},
        {{1, -1.0, 64.0, 2}, {5, -1.0, 3840.0, 4}, {9, -1.0, 5308416.0, 6}},
        {{0, 1.0, 128.0, 2}, {4, 19.0, 24576.0, 4}, {8, 11.0, 5898240.0, 6}, {12, 1.0, 2038431744.0, 8}},
    }};
    RsPolynomials out;
    for (std::size_t k = 0; k < 5; ++k) {
      std::vector<Real> acc(static_cast<std::size_t>(rs_degree + 1), Real(prec));
      for (const Part& part : recipe[k]) {
        const auto d = derivative(part.deriv);
        Real scale(prec, part.num);
        scale /= Real(prec, part.den);
        if (part.pi_exp > 0) scale /= pi_pow(part.pi_exp);
        for (int n = 0; n <= rs_degree; ++n) acc[static_cast<std::size_t>(n)] += d[static_cast<std::size_t>(n)] * scale;
      }
      out[k].resize(static_cast<std::size_t>(rs_degree + 1));
      for (int n = 0; n <= rs_degree; ++n) out[k][static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n)].to_double();
    }
    return out;
  }();
  return polys;
}

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

struct LogTable {
  std::vector<double> log_n;
  std::vector<double> inv_sqrt_n;
};

inline constexpr std::size_t log_table_size = 4096;

inline const LogTable& log_table() {
  static const LogTable table = [] {
    LogTable t;
    t.log_n.resize(log_table_size + 1);
    t.inv_sqrt_n.resize(log_table_size + 1);
    for (std::size_t n = 1; n <= log_table_size; ++n) {
      t.log_n[n] = std::log(static_cast<double>(n));
      t.inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return t;
  }();
  return table;
}

// Gabcke's bounds |R_k(t)| <= c_k t^(-(2k+3)/4) for the remainder left after
// C_0..C_k. Below t = 200 the constants are inflated to the measured worst
// case against the oracle (tests/test_special.cpp guards this).
inline double rs_truncation_bound(double t, int k) {
  static constexpr std::array<double, 5> gabcke = {0.127, 0.053, 0.011, 0.031, 0.017};
  static constexpr std::array<double, 5> low_t = {0.25, 0.25, 0.25, 0.5, 1.0};
  const double c = t >= 200.0 ? gabcke[static_cast<std::size_t>(k)] : low_t[static_cast<std::size_t>(k)];
  return c * std::pow(t, -(2.0 * k + 3.0) / 4.0);
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline double theta_asymptotic(double t, int series_terms) {
  const auto& c = detail::theta_series_coefficients();
  const int terms = std::min<int>(series_terms, static_cast<int>(c.size()));
  double corr = 0.0;
  const double inv_t2 = 1.0 / (t * t);
  double power = 1.0 / t;
  for (int k = 0; k < terms; ++k) {
    corr += c[static_cast<std::size_t>(k)] * power;
    power *= inv_t2;
  }
  return 0.5 * t * std::log(t / two_pi) - 0.5 * t - pi / 8.0 + corr;
}

// theta(t): asymptotic series for t >= 10, direct log-Gamma below.
inline double theta(double t, const EvalConfig& cfg = {}) {
  if (!(t > 0.0)) throw std::domain_error("theta: requires t > 0");
  cfg.validate();
  if (t >= fast_path_floor) return theta_asymptotic(t, cfg.theta_series_terms);
  return mp::riemann_siegel_theta(t, cfg.oracle_precision_digits).to_double();
}

inline double theta_derivative(double t) { return 0.5 * std::log(t / two_pi) - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t * t * t * t); }

// Rounding error of the main sum: the phases theta - t log n carry an absolute
// error of a few ulps of theta.
inline double z_fast_roundoff(double t) {
  const double th = 0.5 * t * std::log(t / two_pi) - 0.5 * t;
  const double n = std::floor(std::sqrt(t / two_pi));
  return 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(th) + 1.0) * (2.0 * std::sqrt(n) + 1.0);
}

inline ZEvaluation z_fast(double t, const EvalConfig& cfg = {}) {
  if (!(t >= fast_path_floor)) throw std::domain_error("z_fast: requires t >= 10");
  cfg.validate();
  const double th = theta_asymptotic(t, cfg.theta_series_terms);
  const double a = std::sqrt(t / two_pi);
  const auto N = static_cast<std::size_t>(std::floor(a));
  const auto& tab = detail::log_table();
  double sum = 0.0;
  for (std::size_t n = 1; n <= N; ++n) {
    double ln, isq;
    if (n <= detail::log_table_size) {
      ln = tab.log_n[n];
      isq = tab.inv_sqrt_n[n];
    } else {
      ln = std::log(static_cast<double>(n));
      isq = 1.0 / std::sqrt(static_cast<double>(n));
    }
    sum += isq * std::cos(th - t * ln);
  }
  const double x = (a - static_cast<double>(N)) - 0.5;
  const auto& polys = detail::rs_polynomials();
  double rem = 0.0;
  double ak = 1.0;
  for (int k = 0; k <= cfg.rs_correction_terms; ++k) {
    rem += detail::horner(polys[static_cast<std::size_t>(k)], x) * ak;
    ak /= a;
  }
  const double sign = (N % 2 == 1) ? 1.0 : -1.0;  // (-1)^(N-1)
  const double z = 2.0 * sum + sign * rem / std::sqrt(a);

  const double roundoff = z_fast_roundoff(t);
  ZEvaluation out;
  out.t = t;
  out.z = z;
  out.theta = th;
  out.err_bound = detail::rs_truncation_bound(t, cfg.rs_correction_terms) + roundoff;
  return out;
}

inline ZEvaluation z_oracle(double t, int precision_digits) {
  if (precision_digits < 15) throw std::invalid_argument("z_oracle: precision_digits must be >= 15");
  if (!(t >= 0.0)) throw std::domain_error("z_oracle: requires t >= 0");
  const int digits = precision_digits;
  mp::ZetaValue zv = mp::zeta_half_line(t, digits + 3);
  const mpfr_prec_t prec = zv.value.prec();
  mp::Real th(prec);
  if (t == 0.0) {
    th = mp::Real(prec, 0.0);
  } else {
    th = mp::riemann_siegel_theta(t, digits + 3);
  }
  const mp::Complex rot = mp::cis(th);
  const mp::Complex zval = rot * zv.value;

  ZEvaluation out;
  out.t = t;
  out.z = zval.re.to_double();
  out.theta = th.to_double();
  out.err_bound = std::pow(10.0, -digits);
  out.imag_residual = std::abs(zval.im.to_double());
  out.z_digits = zval.re.to_string(digits);
  if (out.imag_residual > out.err_bound) {
    throw std::runtime_error("z_oracle: imaginary residual exceeds the error bound at t = " + std::to_string(t));
  }
  return out;
}

inline ZEvaluation z_oracle(double t, const EvalConfig& cfg) { return z_oracle(t, cfg.oracle_precision_digits); }

// Z(t) in double: fast path from the floor upward, oracle below it.
inline double hardy_z(double t, const EvalConfig& cfg = {}) {
  if (t >= fast_path_floor) return z_fast(t, cfg).z;
  return z_oracle(t, cfg.oracle_precision_digits).z;
}

// |zeta(1/2 + it)|^2 = Z(t)^2.
inline double zeta_abs_sq(double t, const EvalConfig& cfg = {}) {
  const double z = hardy_z(t, cfg);
  return z * z;
}

}  // namespace hardy
