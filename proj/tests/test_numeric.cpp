#include <gtest/gtest.h>
#include <mpfr.h>

#include <cmath>
#include <vector>

#include "hardy/mp.hpp"
#include "hardy/numeric.hpp"

using namespace hardy;

TEST(Neumaier, RecoversCancelledTerms) {
  NeumaierSum s;
  s += 1.0;
  s += 1e100;
  s += 1.0;
  s += -1e100;
  EXPECT_EQ(s.value(), 2.0);
  const std::vector<double> v{1e16, 1.0, -1e16};
  EXPECT_EQ(compensated_sum(v), 1.0);
}

TEST(DoubleDouble, TwoProdIsExact) {
  const double a = 1.0 + 0x1p-30, b = 1.0 - 0x1p-29;
  const auto p = two_prod(a, b);
  mpfr_t x;
  mpfr_init2(x, 200);
  mpfr_set_d(x, a, MPFR_RNDN);
  mpfr_mul_d(x, x, b, MPFR_RNDN);
  mpfr_sub_d(x, x, p.hi, MPFR_RNDN);
  mpfr_sub_d(x, x, p.lo, MPFR_RNDN);
  EXPECT_EQ(mpfr_get_d(x, MPFR_RNDN), 0.0);
  mpfr_clear(x);
}

// Against n^(2/3) from mpfr at 200 bits.
TEST(DoubleDouble, PowTwoThirdsMatchesMpfr) {
  mpfr_t x;
  mpfr_init2(x, 200);
  for (std::uint64_t n : {2ull, 3ull, 1000ull, 123456789ull, 99999989ull, (1ull << 40) + 7}) {
    mpfr_set_d(x, static_cast<double>(n), MPFR_RNDN);
    mpfr_mul(x, x, x, MPFR_RNDN);
    mpfr_cbrt(x, x, MPFR_RNDN);
    const auto y = pow_two_thirds(n);
    mpfr_sub_d(x, x, y.hi, MPFR_RNDN);
    mpfr_sub_d(x, x, y.lo, MPFR_RNDN);
    EXPECT_LT(std::abs(mpfr_get_d(x, MPFR_RNDN)), 1e-28 * y.hi) << n;
  }
  mpfr_clear(x);
}

TEST(DoubleDouble, FracStaysInUnitInterval) {
  const auto f = frac(DoubleDouble{5.0, -1e-20});
  EXPECT_GE(f.hi, 0.0);
  EXPECT_TRUE(f.hi < 1.0 || f.lo < 0.0);
  EXPECT_NEAR(f.hi + f.lo, 1.0, 1e-15);
  const auto g = frac(DoubleDouble{-2.25, 0.0});
  EXPECT_EQ(g.hi, 0.75);
}

TEST(GaussLegendre, WeightsSumToTwo) {
  const auto& r = gauss_legendre_16();
  double s = 0.0;
  for (double w : r.w) s += w;
  EXPECT_NEAR(s, 2.0, 1e-15);
}

TEST(GaussLegendre, ExactForDegree31) {
  for (int d = 0; d <= 31; ++d) {
    const double exact = (1.0 - std::pow(-1.0, d + 1)) / (d + 1);
    const double got = gl16([d](double x) { return std::pow(x, d); }, -1.0, 1.0);
    EXPECT_NEAR(got, exact, 1e-14) << d;
  }
}

TEST(Legendre, ProjectionReproducesPolynomial) {
  const auto& r = gauss_legendre_16();
  const auto f = [](double x) { return 3.0 - 2.0 * x + 0.5 * x * x * x * x * x - x * x * x * x * x * x * x * x * x * x * x; };
  std::array<double, gl_order> s{};
  for (int i = 0; i < gl_order; ++i) s[i] = f(r.x[i]);
  const auto c = legendre_coefficients(s);
  for (double u : {-1.0, -0.3, 0.0, 0.77, 1.0}) EXPECT_NEAR(legendre_series(c, u), f(u), 1e-13);
  // int_{-1}^{u} f
  const auto F = [](double x) { return 3.0 * x - x * x + x * x * x * x * x * x / 12.0 - std::pow(x, 12) / 12.0; };
  for (double u : {-0.5, 0.25, 1.0}) EXPECT_NEAR(legendre_antiderivative(c, u), F(u) - F(-1.0), 1e-13);
}

TEST(Fit, RecoversPowerLaw) {
  const std::vector<double> x{10, 100, 1000, 10000};
  std::vector<double> y;
  for (double v : x) y.push_back(-3.0 * std::pow(v, 0.37));
  EXPECT_NEAR(fitted_exponent(x, y), 0.37, 1e-12);
  const std::vector<double> one{1.0};
  EXPECT_THROW(fit_line(one, one), std::invalid_argument);
}

TEST(Distribution, KsDistanceOfQuantiles) {
  // Midpoint quantiles of N(0,1) have KS distance exactly 1/(2n).
  const int n = 200;
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) {
    const double p = (i + 0.5) / n;
    double lo = -10, hi = 10;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (lo + hi);
      (normal_cdf(m) < p ? lo : hi) = m;
    }
    xs.push_back(0.5 * (lo + hi));
  }
  EXPECT_NEAR(ks_distance_normal(xs), 0.5 / n, 1e-12);
}

TEST(Rng, PureFunctionOfKey) {
  const CounterRng a(7), b(7), c(8);
  EXPECT_EQ(a.bits(3, 11), b.bits(3, 11));
  EXPECT_NE(a.bits(3, 11), c.bits(3, 11));
  EXPECT_NE(a.bits(3, 11), a.bits(4, 11));
  double mean = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = a.uniform(0, i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    mean += u;
  }
  EXPECT_NEAR(mean / 100000, 0.5, 0.005);
}

TEST(Parallel, WorkerCountDoesNotChangeResults) {
  std::vector<double> one(1000), four(1000);
  parallel_for(one.size(), 1, [&](std::size_t i) { one[i] = std::sin(static_cast<double>(i)); });
  parallel_for(four.size(), 4, [&](std::size_t i) { four[i] = std::sin(static_cast<double>(i)); });
  EXPECT_EQ(one, four);
}

TEST(Parallel, PropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Mp, RealArithmetic) {
  const mpfr_prec_t p = mp::bits_for_digits(40);
  const mp::Real third = mp::Real(p, 1.0) / mp::Real(p, 3.0);
  EXPECT_EQ(third.to_string(5), "3.3333e-01");
  EXPECT_NEAR(mp::exp(mp::log(mp::Real(p, 2.5))).to_double(), 2.5, 1e-16);
}
