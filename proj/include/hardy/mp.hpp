// mp.hpp
//
// Arbitrary-precision kernel behind the oracle path: a thin RAII wrapper
// over mpfr_t with explicit per-object precision (no global default
// precision, so concurrent callers never interfere), a complex pair on top
// of it, Bernoulli numbers, the complex log-Gamma function via a shifted
// Stirling series, and zeta(1/2 + it) by Euler-Maclaurin summation with a
// tracked remainder bound.

#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hardy::mp {

inline mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(mpfr_prec_t prec, double x) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    const std::string fmt = "%." + std::to_string(std::max(1, digits - 1)) + "Re";
    mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
    return std::string(buf.data());
  }

  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

 private:
  mpfr_t v_;
};

inline Real operator+(Real a, const Real& b) { return a += b; }
inline Real operator-(Real a, const Real& b) { return a -= b; }
inline Real operator*(Real a, const Real& b) { return a *= b; }
inline Real operator/(Real a, const Real& b) { return a /= b; }
inline Real operator-(Real a) {
  mpfr_neg(a.get(), a.get(), MPFR_RNDN);
  return a;
}

inline Real abs(Real a) {
  mpfr_abs(a.get(), a.get(), MPFR_RNDN);
  return a;
}

inline Real const_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

inline Real log(const Real& x) {
  Real r(x.prec());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real exp(const Real& x) {
  Real r(x.prec());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real sqrt(const Real& x) {
  Real r(x.prec());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real cos(const Real& x) {
  Real r(x.prec());
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real sin(const Real& x) {
  Real r(x.prec());
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real pow_si(const Real& x, long n) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(mpfr_prec_t prec, double x, double y) : re(prec, x), im(prec, y) {}
  Complex(Real x, Real y) : re(std::move(x)), im(std::move(y)) {}
  mpfr_prec_t prec() const { return re.prec(); }
};

// dst = a * b; tmp must hold at least the precision of dst. Used in the hot
// loop of the zeta oracle where allocation would dominate.
inline void mul_into(Complex& dst, const Complex& a, const Complex& b, Real& tmp) {
  // (ar + i ai)(br + i bi) = ar br - ai bi + i(ar bi + ai br)
  mpfr_mul(tmp.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_fms(dst.re.get(), a.re.get(), b.re.get(), tmp.get(), MPFR_RNDN);
  mpfr_mul(tmp.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_fma(dst.im.get(), a.re.get(), b.im.get(), tmp.get(), MPFR_RNDN);
}

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
  Complex r(a.prec());
  Real tmp(a.prec());
  mul_into(r, a, b, tmp);
  return r;
}
inline Complex operator*(const Complex& a, const Real& s) { return {a.re * s, a.im * s}; }

inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }

inline Real abs(const Complex& a) {
  Real r(a.prec());
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}

inline Complex operator/(const Complex& a, const Complex& b) {
  const Real d = norm(b);
  Complex conj_b(b.re, -b.im);
  Complex num = a * conj_b;
  return {num.re / d, num.im / d};
}

inline Real arg(const Complex& a) {
  Real r(a.prec());
  mpfr_atan2(r.get(), a.im.get(), a.re.get(), MPFR_RNDN);
  return r;
}

// Principal logarithm.
inline Complex log(const Complex& a) {
  Real modulus = abs(a);
  return {log(modulus), arg(a)};
}

// exp(i phi)
inline Complex cis(const Real& phi) {
  Complex r(phi.prec());
  mpfr_sin_cos(r.im.get(), r.re.get(), phi.get(), MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------
// B_2k / (2k)! = 2 (-1)^(k+1) zeta(2k) / (2 pi)^(2k), produced in order.

class BernoulliRatios {
 public:
  explicit BernoulliRatios(mpfr_prec_t prec) : inv_two_pi_sq_(prec), power_(prec, 1.0), z_(prec) {
    Real two_pi = const_pi(prec);
    mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
    mpfr_sqr(inv_two_pi_sq_.get(), two_pi.get(), MPFR_RNDN);
    mpfr_ui_div(inv_two_pi_sq_.get(), 1, inv_two_pi_sq_.get(), MPFR_RNDN);
  }

  // Returns B_2k/(2k)! for k = 1, 2, ... on successive calls.
  Real next() {
    ++k_;
    power_ *= inv_two_pi_sq_;
    mpfr_zeta_ui(z_.get(), static_cast<unsigned long>(2 * k_), MPFR_RNDN);
    Real r = z_ * power_;
    mpfr_mul_ui(r.get(), r.get(), 2, MPFR_RNDN);
    if (k_ % 2 == 0) mpfr_neg(r.get(), r.get(), MPFR_RNDN);
    return r;
  }

 private:
  Real inv_two_pi_sq_;
  Real power_;
  Real z_;
  int k_ = 0;
};

// ---------------------------------------------------------------------------
// log Gamma(z) for Re z > 0 on the branch continuous from the positive real
// axis. The argument is shifted to |z| >= radius, where the Stirling series
// (z - 1/2) log z - z + log(2 pi)/2 + sum B_2k / (2k (2k-1) z^(2k-1))
// reaches the requested accuracy, and the shift is undone with principal
// logarithms (each log(z + j) has Re > 0, so no branch jumps occur).

inline Complex log_gamma(const Complex& z, int digits) {
  if (mpfr_sgn(z.re.get()) <= 0) throw std::domain_error("log_gamma: requires Re z > 0");
  const mpfr_prec_t prec = z.prec();
  const double radius = 0.6 * digits + 12.0;
  const double zr = z.re.to_double();
  const double zi = z.im.to_double();
  int shift = 0;
  if (std::hypot(zr, zi) < radius) {
    shift = static_cast<int>(std::ceil(std::sqrt(std::max(0.0, radius * radius - zi * zi)) - zr)) + 1;
    shift = std::max(shift, 0);
  }

  Complex w = z;
  Complex shift_log(prec);
  if (shift > 0) {
    // sum_{j<shift} log(z + j) accumulated as one product's log would lose
    // the branch; sum the logs directly.
    Complex zj = z;
    Real one(prec, 1.0);
    for (int j = 0; j < shift; ++j) {
      Complex l = log(zj);
      shift_log.re += l.re;
      shift_log.im += l.im;
      zj.re += one;
    }
    w = zj;
  }

  const Real eps = pow_si(Real(prec, 10.0), -(digits + 4));
  Complex lw = log(w);
  Real half(prec, 0.5);
  Complex wm(w.re - half, w.im);
  Complex result = wm * lw;
  result.re -= w.re;
  result.im -= w.im;
  Real two_pi = const_pi(prec);
  mpfr_mul_ui(two_pi.get(), two_pi.get(), 2, MPFR_RNDN);
  Real half_log_2pi = log(two_pi);
  mpfr_div_ui(half_log_2pi.get(), half_log_2pi.get(), 2, MPFR_RNDN);
  result.re += half_log_2pi;

  Complex one_c(prec, 1.0, 0.0);
  Complex inv_w = one_c / w;
  Complex inv_w2 = inv_w * inv_w;
  Complex power = inv_w;  // w^{-(2k-1)}
  const int max_terms = 4 * digits + 40;
  BernoulliRatios ratios(prec);
  Real fact(prec, 1.0);  // (2k-2)!
  for (int k = 1; k <= max_terms; ++k) {
    if (k > 1) mpfr_mul_ui(fact.get(), fact.get(), static_cast<unsigned long>((2 * k - 2) * (2 * k - 3)), MPFR_RNDN);
    // B_2k / (2k (2k-1)) = (B_2k / (2k)!) (2k-2)!
    Real coef = ratios.next() * fact;
    Complex term = power * coef;
    result = result + term;
    if (mpfr_cmp(abs(term).get(), eps.get()) < 0) break;
    power = power * inv_w2;
  }

  if (shift > 0) result = result - shift_log;
  return result;
}

// theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi.
inline Real riemann_siegel_theta(double t, int digits) {
  const int extra = static_cast<int>(std::log10(std::abs(t) + 10.0)) + 2;
  const mpfr_prec_t prec = bits_for_digits(digits + 2 * extra);
  Complex z(prec, 0.25, 0.0);
  Real tt(prec, t);
  z.im = tt;
  mpfr_div_ui(z.im.get(), z.im.get(), 2, MPFR_RNDN);
  Complex lg = log_gamma(z, digits + extra);
  Real lpi = log(const_pi(prec));
  Real th = lg.im - tt * lpi / Real(prec, 2.0);
  return th;
}

// ---------------------------------------------------------------------------
// zeta(1/2 + it) by Euler-Maclaurin:
//   zeta(s) = sum_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//           + sum_{k=1}^{M} B_2k/(2k)! s(s+1)...(s+2k-2) N^{-s-2k+1} + R_M,
//   |R_M| <= |(s+2M+1)/(sigma+2M+1)| |T_{M+1}|.
// n^{-s} is built multiplicatively from prime values, so only primes pay
// for a logarithm and a sine/cosine.

struct ZetaValue {
  Complex value;
  double remainder_bound = 0.0;  // Euler-Maclaurin tail bound
  std::size_t terms = 0;         // N
  int correction_terms = 0;      // M
};

inline ZetaValue zeta_half_line(double t, int digits) {
  const double at = std::abs(t);
  const int extra = static_cast<int>(std::log10(at + 10.0)) + 3;
  std::size_t n_terms = static_cast<std::size_t>(std::max(0.25 * at, 0.6 * digits)) + 8;

  for (int attempt = 0; attempt < 6; ++attempt, n_terms = n_terms * 3 / 2 + 8) {
    const double log2_n = std::log2(static_cast<double>(n_terms) + 1.0);
    const mpfr_prec_t prec = bits_for_digits(digits + 2 * extra) + static_cast<mpfr_prec_t>(log2_n) + 16;
    const std::size_t N = n_terms;

    // smallest prime factor sieve
    std::vector<std::uint32_t> spf(N + 1, 0);
    for (std::size_t i = 2; i <= N; ++i) {
      if (spf[i] == 0) {
        for (std::size_t j = i; j <= N; j += i) {
          if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
      }
    }

    Real tt(prec, t);
    std::vector<Complex> pw;  // pw[n] = n^{-s}
    pw.reserve(N + 1);
    pw.emplace_back(prec);
    pw.emplace_back(prec, 1.0, 0.0);
    Real lg(prec), ang(prec), mag(prec), tmp(prec);
    Complex sum(prec, 1.0, 0.0);
    for (std::size_t n = 2; n <= N; ++n) {
      Complex v(prec);
      const std::size_t p = spf[n];
      if (p == n) {
        mpfr_log_ui(lg.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_mul(ang.get(), tt.get(), lg.get(), MPFR_RNDN);
        mpfr_sin_cos(v.im.get(), v.re.get(), ang.get(), MPFR_RNDN);
        mpfr_set_ui(mag.get(), static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_rec_sqrt(mag.get(), mag.get(), MPFR_RNDN);
        mpfr_mul(v.re.get(), v.re.get(), mag.get(), MPFR_RNDN);
        mpfr_mul(v.im.get(), v.im.get(), mag.get(), MPFR_RNDN);
        mpfr_neg(v.im.get(), v.im.get(), MPFR_RNDN);
      } else {
        mul_into(v, pw[p], pw[n / p], tmp);
      }
      if (n < N) {
        mpfr_add(sum.re.get(), sum.re.get(), v.re.get(), MPFR_RNDN);
        mpfr_add(sum.im.get(), sum.im.get(), v.im.get(), MPFR_RNDN);
      }
      pw.push_back(std::move(v));
    }

    const Complex& nps = pw[N];  // N^{-s}
    Complex s(prec, 0.5, 0.0);
    s.im = tt;
    Real nr(prec, static_cast<double>(N));

    // N^{1-s}/(s-1)
    Complex sm1(s.re - Real(prec, 1.0), s.im);
    Complex tail = (nps * nr) / sm1;
    sum = sum + tail;
    // N^{-s}/2
    Real half(prec, 0.5);
    sum = sum + nps * half;

    // Euler-Maclaurin corrections T_k = (B_2k/(2k)!) s(s+1)...(s+2k-2) N^{-s-2k+1}.
    const int m_cap = 4 * digits + static_cast<int>(at) / 2 + 60;
    BernoulliRatios ratios(prec);
    Real inv_n2 = Real(prec, 1.0) / (nr * nr);
    Complex q = (s * nps) / Complex(nr, Real(prec));  // s N^{-s-1}
    Real coef = ratios.next();
    const double target = std::pow(10.0, -(digits + 4));
    double prev_mag = INFINITY;
    bool converged = false;
    int used = 0;
    double bound = INFINITY;
    for (int k = 1; k <= m_cap; ++k) {
      Complex term = q * coef;
      const double mag_k = abs(term).to_double();
      if (mag_k > prev_mag) break;  // asymptotic divergence: N too small
      prev_mag = mag_k;
      sum = sum + term;
      used = k;
      Complex f1(s.re + Real(prec, 2.0 * k - 1.0), s.im);
      Complex f2(s.re + Real(prec, 2.0 * k), s.im);
      q = q * f1 * f2 * inv_n2;
      coef = ratios.next();
      const double next_mag = abs(q * coef).to_double();
      const double sigma_fac = std::hypot(0.5 + 2.0 * k + 1.0, t) / (0.5 + 2.0 * k + 1.0);
      bound = sigma_fac * next_mag;
      if (bound < target) {
        converged = true;
        break;
      }
    }
    if (!converged) continue;
    ZetaValue out{std::move(sum), bound, N, used};
    return out;
  }
  throw std::runtime_error("zeta_half_line: Euler-Maclaurin summation did not converge");
}

}  // namespace hardy::mp
