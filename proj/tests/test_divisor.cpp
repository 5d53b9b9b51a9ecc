#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "hardy/divisor.hpp"
#include "oracles.hpp"

using namespace hardy;

TEST(Sieve, MatchesBruteForceSmall) {
  for (int k = 1; k <= 4; ++k) {
    const auto t = sieve_dk(k, 1, 400);
    for (std::uint64_t n = 1; n <= 400; ++n) ASSERT_EQ(t.at(n), oracle::divisor_count_brute(k, n)) << k << " " << n;
  }
}

TEST(Sieve, PathsAgreeOnOffsetRange) {
  for (int k : {2, 3, 5}) {
    const auto a = sieve_dk(k, 900'000, 1'000'000, SievePath::convolution);
    const auto b = sieve_dk(k, 900'000, 1'000'000, SievePath::factorization);
    EXPECT_EQ(a.values, b.values) << k;
  }
}

TEST(Sieve, FactorizationAgreesWithBruteOnRandomN) {
  const CounterRng rng(5);
  const std::uint64_t lo = 50'000'000, hi = lo + 200'000;
  const auto t = sieve_dk(3, lo, hi, SievePath::factorization);
  for (int i = 0; i < 20; ++i) {
    const auto n = lo + static_cast<std::uint64_t>(rng.uniform(0, i) * 200'000);
    // d_3(n) = sum over d | n of d_2(n/d), all by trial division.
    const auto divisors = [](std::uint64_t m) {
      std::vector<std::uint64_t> out;
      for (std::uint64_t q = 1; q * q <= m; ++q) {
        if (m % q) continue;
        out.push_back(q);
        if (q * q != m) out.push_back(m / q);
      }
      return out;
    };
    std::uint64_t s = 0;
    for (auto d : divisors(n)) s += divisors(n / d).size();
    EXPECT_EQ(t.at(n), s) << n;
  }
}

TEST(Sieve, MultiplicativeOnPrimePowers) {
  const auto t = sieve_dk(3, 1, 5000);
  // d_3(p^e) = C(e+2, 2)
  EXPECT_EQ(t.at(2), 3u);
  EXPECT_EQ(t.at(8), 10u);
  EXPECT_EQ(t.at(4096), 91u);
  EXPECT_EQ(t.at(12), t.at(4) * t.at(3));
  EXPECT_EQ(t.at(1), 1u);
}

TEST(Sieve, RejectsBadArguments) {
  EXPECT_THROW(sieve_dk(0, 1, 10), std::invalid_argument);
  EXPECT_THROW(sieve_dk(3, 0, 10), std::invalid_argument);
  EXPECT_THROW(sieve_dk(3, 20, 10), std::invalid_argument);
  EXPECT_THROW(sieve_dk(3, 1, sieve_capacity + 1), std::length_error);
  const auto t = sieve_dk(2, 10, 20);
  EXPECT_THROW(t.at(9), std::out_of_range);
}

// sum_{n<=x} d(n) = 2 sum_{d<=sqrt x} floor(x/d) - floor(sqrt x)^2.
TEST(Hyperbola, MatchesSieveSum) {
  const auto t = sieve_dk(2, 1, 100'000);
  std::uint64_t run = 0;
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    run += t.at(n);
    if (n % 9973 == 0 || n == 100'000) {
      EXPECT_EQ(divisor_summatory_hyperbola(n), run) << n;
    }
  }
  EXPECT_EQ(divisor_summatory_hyperbola(0), 0u);
}

TEST(Phase, CosineMatchesMpfr) {
  for (std::uint64_t n : {1ull, 7ull, 12345ull, 98765432ull}) {
    mp::Real x(200, static_cast<double>(n));
    mpfr_rootn_ui(x.get(), x.get(), 3, MPFR_RNDN);
    x = x * x;
    x = x * mp::Real(200, 3.0) * mp::const_pi(200) + mp::const_pi(200) / mp::Real(200, 8.0);
    EXPECT_NEAR(cubic_phase_cos(n), mp::cos(x).to_double(), 1e-12) << n;
  }
}

TEST(Phase, BlockSumsAreAssociative) {
  const auto t = sieve_dk(3, 1, 300'000);
  const double whole = divisor_phase_sum(t, 1000, 300'000);
  const double parts = divisor_phase_sum(t, 1000, 150'000) + divisor_phase_sum(t, 150'001, 300'000);
  EXPECT_NEAR(whole, parts, 1e-9 * std::sqrt(300'000.0));
  EXPECT_EQ(whole, divisor_phase_sum(t, 1000, 300'000, 3));
  EXPECT_EQ(divisor_phase_sum(t, 10, 5), 0.0);
  EXPECT_THROW(divisor_phase_sum(t, 0, 10), std::out_of_range);
}

TEST(ExponentialSum, MatchesMpReference) {
  for (int k : {1, 2, 3}) {
    const double fast = pure_exponential_sum(k, 20000);
    const double ref = pure_exponential_sum_mp(k, 20000, 40);
    EXPECT_NEAR(fast, ref, 1e-9 * 20000) << k;
  }
}

TEST(CubicMoment, RangeAndRightSide) {
  const auto r = cubic_moment_range(1000.0);
  EXPECT_EQ(r.first, static_cast<std::uint64_t>(std::ceil(std::pow(1000.0 / two_pi, 1.5))));
  EXPECT_EQ(r.last, static_cast<std::uint64_t>(std::floor(std::pow(1000.0 / pi, 1.5))));
  EXPECT_NEAR(cubic_moment_factor, two_pi * std::sqrt(2.0 / 3.0), 1e-14);
  const auto d3 = sieve_dk(3, 1, r.last);
  EXPECT_EQ(cubic_moment_rhs(1000.0), cubic_moment_rhs(1000.0, d3));
  EXPECT_THROW(cubic_moment_rhs(1000.0, sieve_dk(2, 1, r.last)), std::invalid_argument);
  EXPECT_EQ(cubic_moment_rhs(1.0), 0.0);
}

TEST(Cache, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "hardy_dk_cache_test";
  std::filesystem::remove_all(dir);
  const auto a = sieve_dk_cached(dir, 3, 100, 5000);
  EXPECT_TRUE(std::filesystem::exists(dk_cache_path(dir, 3, 100, 5000)));
  const auto b = sieve_dk_cached(dir, 3, 100, 5000);
  EXPECT_EQ(a.values, b.values);
  const auto c = parse_dk_table(format_dk_table(a));
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.lo, 100u);
  EXPECT_EQ(c.values, a.values);
  EXPECT_THROW(parse_dk_table("junk\n"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
