// divisor.hpp
//
// d_k(n) by iterated Dirichlet convolution with 1 or by segmented
// factorization, the sums  sum d_k(n) n^(-1/6) cos(3 pi n^(2/3) + pi/8)  over
// [N, 2N] and over the range that matches int_T^{2T} Z^3.
//
// The phase 3 pi n^(2/3) reaches 10^6 rad near n = 10^8, so n^(2/3) is taken
// to double-double accuracy and reduced modulo 2 before multiplying by pi.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/cache.hpp"
#include "hardy/mp.hpp"
#include "hardy/numeric.hpp"

namespace hardy {

inline constexpr std::uint64_t sieve_capacity = 100'000'000;
// Above this bound the convolution path would need [1, hi] in memory twice.
inline constexpr std::uint64_t convolution_limit = 1ull << 24;

enum class SievePath { automatic, convolution, factorization };

struct DivisorTable {
  int k = 1;
  std::uint64_t lo = 1;
  std::uint64_t hi = 1;
  std::vector<std::uint64_t> values;

  std::uint64_t at(std::uint64_t n) const {
    if (n < lo || n > hi) throw std::out_of_range("DivisorTable::at: n outside [lo, hi]");
    return values[n - lo];
  }
};

namespace detail {

inline void check_sieve_args(int k, std::uint64_t lo, std::uint64_t hi) {
  if (k < 1 || k > 8) throw std::invalid_argument("sieve_dk: k must lie in [1, 8]");
  if (lo < 1 || lo > hi) throw std::invalid_argument("sieve_dk: requires 1 <= lo <= hi");
  if (hi > sieve_capacity) throw std::length_error("sieve_dk: hi exceeds the sieve capacity of 1e8");
}

inline std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<char> composite(n + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = 1;
  }
  return primes;
}

// C(e + k - 1, k - 1) = d_k(p^e).
inline std::uint64_t dk_prime_power(int k, int e) {
  std::uint64_t c = 1;
  for (int i = 1; i < k; ++i) c = c * static_cast<std::uint64_t>(e + i) / static_cast<std::uint64_t>(i);
  return c;
}

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

inline DivisorTable sieve_dk_convolution(int k, std::uint64_t lo, std::uint64_t hi) {
  detail::check_sieve_args(k, lo, hi);
  std::vector<std::uint64_t> cur(hi + 1, 1), next(hi + 1, 0);
  cur[0] = 0;
  for (int step = 2; step <= k; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (std::uint64_t d = 1; d <= hi; ++d) {
      const std::uint64_t v = cur[d];
      for (std::uint64_t m = d; m <= hi; m += d) next[m] += v;
    }
    cur.swap(next);
  }
  DivisorTable t;
  t.k = k;
  t.lo = lo;
  t.hi = hi;
  t.values.assign(cur.begin() + static_cast<std::ptrdiff_t>(lo), cur.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  return t;
}

inline DivisorTable sieve_dk_factorization(int k, std::uint64_t lo, std::uint64_t hi) {
  detail::check_sieve_args(k, lo, hi);
  const std::uint64_t len = hi - lo + 1;
  std::vector<std::uint64_t> rest(len), dk(len, 1);
  for (std::uint64_t i = 0; i < len; ++i) rest[i] = lo + i;
  for (std::uint32_t p : detail::primes_up_to(detail::isqrt(hi))) {
    const std::uint64_t first = ((lo + p - 1) / p) * p;
    for (std::uint64_t m = first; m <= hi; m += p) {
      std::uint64_t& r = rest[m - lo];
      int e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      dk[m - lo] *= detail::dk_prime_power(k, e);
    }
  }
  for (std::uint64_t i = 0; i < len; ++i) {
    if (rest[i] > 1) dk[i] *= static_cast<std::uint64_t>(k);
  }
  DivisorTable t;
  t.k = k;
  t.lo = lo;
  t.hi = hi;
  t.values = std::move(dk);
  return t;
}

inline DivisorTable sieve_dk(int k, std::uint64_t lo, std::uint64_t hi, SievePath path = SievePath::automatic) {
  if (path == SievePath::automatic) path = hi <= convolution_limit ? SievePath::convolution : SievePath::factorization;
  return path == SievePath::convolution ? sieve_dk_convolution(k, lo, hi) : sieve_dk_factorization(k, lo, hi);
}

// sum_{d <= x} floor(x/d) = sum_{n <= x} d_2(n), by the hyperbola method.
inline std::uint64_t divisor_summatory_hyperbola(std::uint64_t x) {
  if (x == 0) return 0;
  const std::uint64_t r = detail::isqrt(x);
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d <= r; ++d) s += x / d;
  return 2 * s - r * r;
}

// ---------------------------------------------------------------------------
// Phase sums

// cos(3 pi n^(2/3) + pi/8), with 3 pi y = 2 pi * (3y/2 mod 1).
inline double cubic_phase_cos(std::uint64_t n) {
  const DoubleDouble y = pow_two_thirds(n);
  const DoubleDouble f = frac(y * 1.5);
  return std::cos(two_pi * f.hi + two_pi * f.lo + pi / 8.0);
}

inline constexpr std::uint64_t phase_block = 1 << 16;

// sum_{n in [a, b]} d(n) n^(-1/6) cos(3 pi n^(2/3) + pi/8), reduced in fixed
// blocks of n so the rounding is independent of the worker count.
inline double divisor_phase_sum(const DivisorTable& dk, std::uint64_t a, std::uint64_t b, unsigned workers = 1) {
  if (a > b) return 0.0;
  if (a < dk.lo || b > dk.hi) throw std::out_of_range("divisor_phase_sum: range outside the table");
  const std::uint64_t blocks = (b - a) / phase_block + 1;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, workers, [&](std::size_t bi) {
    const std::uint64_t n0 = a + bi * phase_block;
    const std::uint64_t n1 = std::min(b, n0 + phase_block - 1);
    NeumaierSum s;
    for (std::uint64_t n = n0; n <= n1; ++n) {
      s += static_cast<double>(dk.values[n - dk.lo]) * std::pow(static_cast<double>(n), -1.0 / 6.0) * cubic_phase_cos(n);
    }
    partial[bi] = s.value();
  });
  return compensated_sum(partial);
}

// S_k(N) = sum_{N <= n <= 2N} d_k(n) n^(-1/6) cos(3 pi n^(2/3) + pi/8).
inline double pure_exponential_sum(int k, std::uint64_t N, unsigned workers = 1) {
  if (k < 1 || k > 8) throw std::invalid_argument("pure_exponential_sum: k must lie in [1, 8]");
  if (N < 1) throw std::invalid_argument("pure_exponential_sum: requires N >= 1");
  if (2 * N > sieve_capacity) throw std::length_error("pure_exponential_sum: 2N exceeds the sieve capacity");
  const auto dk = sieve_dk(k, N, 2 * N);
  return divisor_phase_sum(dk, N, 2 * N, workers);
}

// The same sum with n^(2/3), the phase and the weights carried in MPFR at
// `digits` digits; a slow reference for small N.
inline double pure_exponential_sum_mp(int k, std::uint64_t N, int digits) {
  const auto dk = sieve_dk_factorization(k, N, 2 * N);
  const mpfr_prec_t prec = mp::bits_for_digits(digits);
  mp::Real acc(prec, 0.0), x(prec), y(prec), ph(prec), w(prec), c(prec);
  mp::Real eighth_pi = mp::const_pi(prec);
  mpfr_div_ui(eighth_pi.get(), eighth_pi.get(), 8, MPFR_RNDN);
  for (std::uint64_t n = N; n <= 2 * N; ++n) {
    mpfr_set_ui(x.get(), static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_rootn_ui(y.get(), x.get(), 3, MPFR_RNDN);  // n^(1/3)
    mpfr_mul(ph.get(), y.get(), y.get(), MPFR_RNDN);  // n^(2/3)
    ph *= mp::const_pi(prec);
    mpfr_mul_ui(ph.get(), ph.get(), 3, MPFR_RNDN);
    ph += eighth_pi;
    c = mp::cos(ph);
    mpfr_rootn_ui(w.get(), x.get(), 6, MPFR_RNDN);  // n^(1/6)
    mpfr_mul_ui(c.get(), c.get(), static_cast<unsigned long>(dk.at(n)), MPFR_RNDN);
    acc += c / w;
  }
  return acc.to_double();
}

struct CubicRange {
  std::uint64_t first = 1;
  std::uint64_t last = 0;  // empty when last < first
};

// ceil((T/2pi)^(3/2)) .. floor((T/pi)^(3/2)).
inline CubicRange cubic_moment_range(double T) {
  if (!(T > 0.0)) throw std::invalid_argument("cubic_moment_range: requires T > 0");
  const double lo = std::pow(T / two_pi, 1.5), hi = std::pow(T / pi, 1.5);
  CubicRange r;
  r.first = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(lo)));
  r.last = static_cast<std::uint64_t>(std::floor(hi));
  return r;
}

inline constexpr double cubic_moment_factor = two_pi * 0.816496580927726;  // 2 pi sqrt(2/3)

inline double cubic_moment_rhs(double T, const DivisorTable& d3, unsigned workers = 1) {
  if (d3.k != 3) throw std::invalid_argument("cubic_moment_rhs: table must hold d_3");
  const auto r = cubic_moment_range(T);
  if (r.last < r.first) return 0.0;
  return cubic_moment_factor * divisor_phase_sum(d3, r.first, r.last, workers);
}

inline double cubic_moment_rhs(double T, unsigned workers = 1) {
  const auto r = cubic_moment_range(T);
  if (r.last < r.first) return 0.0;
  if (r.last > sieve_capacity) throw std::length_error("cubic_moment_rhs: (T/pi)^(3/2) exceeds the sieve capacity");
  return cubic_moment_rhs(T, sieve_dk(3, r.first, r.last), workers);
}

// ---------------------------------------------------------------------------
// Cache: "hardy-dk v1 k=<k> lo=<lo> hi=<hi>" then one value per line.

inline std::string format_dk_table(const DivisorTable& t) {
  std::ostringstream out;
  out << "hardy-dk v1 k=" << t.k << " lo=" << t.lo << " hi=" << t.hi << '\n';
  for (auto v : t.values) out << v << '\n';
  return out.str();
}

inline DivisorTable parse_dk_table(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  std::getline(in, header);
  if (header.rfind("hardy-dk v1", 0) != 0) throw std::runtime_error("not a hardy-dk v1 table");
  DivisorTable t;
  t.k = std::stoi(header_field(header, "k").value());
  t.lo = std::stoull(header_field(header, "lo").value());
  t.hi = std::stoull(header_field(header, "hi").value());
  t.values.reserve(t.hi - t.lo + 1);
  std::uint64_t v;
  while (in >> v) t.values.push_back(v);
  if (t.values.size() != t.hi - t.lo + 1) throw std::runtime_error("hardy-dk table is truncated");
  return t;
}

inline std::filesystem::path dk_cache_path(const std::filesystem::path& dir, int k, std::uint64_t lo, std::uint64_t hi) {
  return dir / ("dk-k" + std::to_string(k) + "-lo" + std::to_string(lo) + "-hi" + std::to_string(hi) + ".txt");
}

inline DivisorTable sieve_dk_cached(const std::filesystem::path& dir, int k, std::uint64_t lo, std::uint64_t hi) {
  const auto p = dk_cache_path(dir, k, lo, hi);
  std::error_code ec;
  if (std::filesystem::exists(p, ec)) {
    try {
      return parse_dk_table(read_file(p));
    } catch (const std::exception&) {
    }
  }
  auto t = sieve_dk(k, lo, hi);
  atomic_write(p, format_dk_table(t));
  return t;
}

}  // namespace hardy
