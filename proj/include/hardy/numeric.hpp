// numeric.hpp
//
// Small numerical building blocks shared by every module: compensated
// summation, double-double arithmetic, the 16-point Gauss-Legendre rule with
// its Legendre projection, least-squares exponent fits, a counter-based
// random stream and a deterministic chunked parallel loop.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <numbers>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hardy {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Compensated summation (Neumaier's variant of Kahan).

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  NeumaierSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// ---------------------------------------------------------------------------
// Double-double arithmetic, enough for ~31 significant digits on + - *.

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }

inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) { return a * DoubleDouble{b, 0.0}; }

// Division by a double, one correction step.
inline DoubleDouble operator/(DoubleDouble a, double b) {
  const double q1 = a.hi / b;
  DoubleDouble r = a - two_prod(q1, b);
  const double q2 = r.hi / b;
  r = r - two_prod(q2, b);
  const double q3 = r.hi / b;
  return DoubleDouble{q1, 0.0} + DoubleDouble{q2, 0.0} + DoubleDouble{q3, 0.0};
}

// Fractional part in [0, 1).
inline DoubleDouble frac(DoubleDouble a) {
  const double f = std::floor(a.hi);
  DoubleDouble r = quick_two_sum(a.hi - f, a.lo);
  if (r.hi < 0.0) r = r + DoubleDouble{1.0, 0.0};
  if (r.hi > 1.0 || (r.hi == 1.0 && r.lo >= 0.0)) r = r - DoubleDouble{1.0, 0.0};
  return r;
}

// n^(2/3) for integer n < 2^53 to double-double accuracy: a Newton step on
// y^3 = n^2 starting from the double-precision cube root.
inline DoubleDouble pow_two_thirds(std::uint64_t n) {
  const double nd = static_cast<double>(n);
  const DoubleDouble n2 = two_prod(nd, nd);
  const double c = std::cbrt(nd);
  DoubleDouble y{c * c, 0.0};
  for (int it = 0; it < 2; ++it) {
    const DoubleDouble y3 = y * y * y;
    const DoubleDouble resid = y3 - n2;
    const double denom = 3.0 * y.hi * y.hi;
    y = y - resid / denom;
  }
  return y;
}

// ---------------------------------------------------------------------------
// 16-point Gauss-Legendre rule on [-1, 1] and the discrete Legendre
// projection it induces. Nodes come from Newton iteration on P_16.

inline constexpr int gl_order = 16;

struct GaussLegendreRule {
  std::array<double, gl_order> x{};
  std::array<double, gl_order> w{};
  // proj[k][i] = (2k+1)/2 * w_i * P_k(x_i); c_k = sum_i proj[k][i] f(x_i).
  std::array<std::array<double, gl_order>, gl_order> proj{};
};

inline long double legendre_p(int n, long double x, long double* deriv = nullptr) {
  long double p0 = 1.0L;
  long double p1 = x;
  if (n == 0) {
    if (deriv) *deriv = 0.0L;
    return 1.0L;
  }
  for (int j = 2; j <= n; ++j) {
    const long double p2 = ((2.0L * j - 1.0L) * x * p1 - (j - 1.0L) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  if (deriv) *deriv = n * (x * p1 - p0) / (x * x - 1.0L);
  return p1;
}

inline const GaussLegendreRule& gauss_legendre_16() {
  static const GaussLegendreRule rule = [] {
    GaussLegendreRule r;
    constexpr int n = gl_order;
    for (int i = 1; i <= n / 2; ++i) {
      long double z = std::cos(std::numbers::pi_v<long double> * (i - 0.25L) / (n + 0.5L));
      long double dp = 0.0L;
      for (int it = 0; it < 100; ++it) {
        const long double p = legendre_p(n, z, &dp);
        const long double z1 = z;
        z = z1 - p / dp;
        if (std::abs(z - z1) < 1e-19L) break;
      }
      legendre_p(n, z, &dp);
      const long double w = 2.0L / ((1.0L - z * z) * dp * dp);
      r.x[i - 1] = static_cast<double>(-z);
      r.x[n - i] = static_cast<double>(z);
      r.w[i - 1] = static_cast<double>(w);
      r.w[n - i] = static_cast<double>(w);
    }
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        r.proj[k][i] = static_cast<double>((2.0L * k + 1.0L) / 2.0L * r.w[i] *
                                           legendre_p(k, r.x[i]));
      }
    }
    return r;
  }();
  return rule;
}

using LegendreCoeffs = std::array<double, gl_order>;

inline LegendreCoeffs legendre_coefficients(std::span<const double, gl_order> samples) {
  const auto& rule = gauss_legendre_16();
  LegendreCoeffs c{};
  for (int k = 0; k < gl_order; ++k) {
    double acc = 0.0;
    for (int i = 0; i < gl_order; ++i) acc += rule.proj[k][i] * samples[i];
    c[k] = acc;
  }
  return c;
}

// Value of sum_k c_k P_k(u).
inline double legendre_series(const LegendreCoeffs& c, double u) {
  // Clenshaw recurrence for P_k.
  double b1 = 0.0, b2 = 0.0;
  for (int k = gl_order - 1; k >= 1; --k) {
    const double alpha = (2.0 * k + 1.0) / (k + 1.0) * u;
    const double beta = -(k + 1.0) / (k + 2.0);
    const double b0 = c[k] + alpha * b1 + beta * b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + u * b1 - 0.5 * b2;
}

// Integral over [-1, u] of sum_k c_k P_k, using
// int_{-1}^{u} P_k = (P_{k+1}(u) - P_{k-1}(u)) / (2k+1) for k >= 1.
inline double legendre_antiderivative(const LegendreCoeffs& c, double u) {
  std::array<double, gl_order + 1> p{};
  p[0] = 1.0;
  p[1] = u;
  for (int j = 2; j <= gl_order; ++j) {
    p[j] = ((2.0 * j - 1.0) * u * p[j - 1] - (j - 1.0) * p[j - 2]) / j;
  }
  NeumaierSum s;
  s.add(c[0] * (u + 1.0));
  for (int k = 1; k < gl_order; ++k) s.add(c[k] * (p[k + 1] - p[k - 1]) / (2.0 * k + 1.0));
  return s.value();
}

// Plain GL16 on [a, b] for any callable.
template <class F>
double gl16(const F& f, double a, double b) {
  const auto& rule = gauss_legendre_16();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < gl_order; ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
  return acc * half;
}

// ---------------------------------------------------------------------------
// Least squares.

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

// Slope of log|y| against log x: the growth exponent of |y|.
inline double fitted_exponent(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return fit_line(lx, ly).slope;
}

// ---------------------------------------------------------------------------
// Distribution helpers.

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Kolmogorov-Smirnov distance between the empirical law of xs and N(0,1).
inline double ks_distance_normal(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("ks_distance_normal: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = normal_cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

// Counter-based generator: the value at (seed, stream, index) is a pure
// function of its key, so any partition of the index space across workers
// draws identical numbers.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const {
    return splitmix64(splitmix64(key_ ^ splitmix64(stream)) + index);
  }
  // Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t index) const {
    return static_cast<double>(bits(stream, index) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

// ---------------------------------------------------------------------------
// Deterministic parallel loop: [0, n) is cut into contiguous chunks, one per
// worker; fn(i) must only write to slot i of caller-owned storage.

template <class Fn>
void parallel_for(std::size_t n, unsigned workers, const Fn& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunks = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      pool.emplace_back([&fn, &errors, c, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hardy
