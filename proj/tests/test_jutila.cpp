#include <gtest/gtest.h>

#include <cmath>

#include "hardy/jutila.hpp"
#include "hardy/quad.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

// int_0^T F1 by Simpson on each piece between the jump points 2 pi (L +- 1/4)^2.
double f1_integral_simpson(double T) {
  std::vector<double> cuts{0.0};
  for (int L = 0;; ++L) {
    bool added = false;
    for (double q : {0.25, 0.75}) {
      const double c = two_pi * (L + q) * (L + q);
      if (c < T) {
        cuts.push_back(c);
        added = true;
      }
    }
    if (!added) break;
  }
  cuts.push_back(T);
  double s = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const double a = cuts[i - 1], b = cuts[i];
    const double mid = 0.5 * (a + b);
    const double v = f1(mid);
    if (v == 0.0) continue;
    const double sign = v > 0 ? 1.0 : -1.0;
    s += oracle::simpson([&](double t) { return sign * two_pi * std::pow(t / two_pi, 0.25); }, a, b, 200);
  }
  return s;
}

}  // namespace

TEST(KStep, ValuesAndEdges) {
  EXPECT_EQ(k_step(0.1), 0.0);
  EXPECT_EQ(k_step(0.5), two_pi);
  EXPECT_EQ(k_step(0.9), 0.0);
  EXPECT_EQ(k_step(0.25), 4.0 * pi / 3.0);
  EXPECT_EQ(k_step(0.75), 2.0 * pi / 3.0);
  EXPECT_THROW(k_step(1.5), std::domain_error);
}

TEST(F1, ParityAndScale) {
  // sqrt(T/2pi) = 3.5: L = 3 odd, frac = 1/2.
  const double T = two_pi * 3.5 * 3.5;
  EXPECT_NEAR(f1(T), -std::pow(3.5 * 3.5, 0.25) * two_pi, 1e-12);
  EXPECT_EQ(f1(two_pi * 4.1 * 4.1), 0.0);
  EXPECT_THROW(f1(0.0), std::domain_error);
}

TEST(Fourier, CoefficientPattern) {
  const double r2 = std::sqrt(2.0);
  const double expect[] = {0, r2, 0, -r2, 0, -r2, 0, r2, 0, r2};
  for (int n = 0; n < 10; ++n) EXPECT_EQ(fourier_a(n), expect[n]) << n;
  for (int n = 1; n < 16; n += 2) EXPECT_NEAR(fourier_a(n), std::cos(pi * n / 4) - std::cos(3 * pi * n / 4), 1e-14);
}

TEST(Fourier, SeriesConvergesToStep) {
  for (double x : {0.5, 1.1, 1.5, 2.9, 3.6, -0.5}) EXPECT_NEAR(u_fourier(x, 20000), u_direct(x), 2e-3) << x;
  // At the jump the series takes the mean of the one-sided limits.
  EXPECT_NEAR(u_fourier(0.25, 20000), 0.5 * two_pi, 1e-3);
}

TEST(IntF1, PiecewiseMatchesSimpson) {
  for (double T : {50.0, 333.3, 1000.0, 5432.1}) {
    const double ref = f1_integral_simpson(T);
    EXPECT_NEAR(int_f1_piecewise(T), ref, 1e-8 * std::max(1.0, std::abs(ref))) << T;
  }
}

TEST(IntF1, SeriesWithinDifferenceConstant) {
  const double C = int_f1_difference_constant(100.0);
  for (double T = 100.0; T < 1e5; T *= 1.37) {
    const auto s = int_f1_closed_form(T, 100000);
    const double diff = std::abs(int_f1_piecewise(T) - s.value);
    EXPECT_LE(diff, C * std::pow(T, 0.25) + s.tail_bound) << T;
  }
}

TEST(IntF1, SeriesTailBoundHolds) {
  const double T = 12345.0;
  const auto a = int_f1_closed_form(T, 200);
  const auto b = int_f1_closed_form(T, 400000);
  EXPECT_LE(std::abs(a.value - b.value), a.tail_bound);
  EXPECT_THROW(int_f1_closed_form(T, 0), std::invalid_argument);
}

// At sqrt(T/2pi) = 2m + 3/4 every term of the series has a(n) cos(pi n x) = -1,
// so it sums to -pi^2/8 and int F1 ~ +2 pi^2 (T/2pi)^(3/4); at 2m + 1/4 the sign flips.
TEST(IntF1, OmegaFamilies) {
  const double C = int_f1_difference_constant(100.0);
  for (std::int64_t m = 2; m <= 30; m += 7) {
    const double tp = omega_plus_point(m), tm = omega_minus_point(m);
    const double lead_p = 2.0 * pi * pi * std::pow(tp / two_pi, 0.75);
    const double lead_m = 2.0 * pi * pi * std::pow(tm / two_pi, 0.75);
    EXPECT_NEAR(int_f1_piecewise(tp), lead_p, C * std::pow(tp, 0.25)) << m;
    EXPECT_NEAR(int_f1_piecewise(tm), -lead_m, C * std::pow(tm, 0.25)) << m;
  }
}

TEST(Predict, DecompositionFields) {
  const double T = two_pi * 10.5 * 10.5;
  const auto d = predict_F(T);
  EXPECT_EQ(d.L, 10);
  EXPECT_NEAR(d.frac, 0.5, 1e-12);
  EXPECT_NEAR(d.theta0, 0.25, 1e-12);
  EXPECT_FALSE(d.edge);
  EXPECT_EQ(d.main, f1(T));
  EXPECT_NEAR(d.error_scale, std::pow(T, 1.0 / 6.0) * std::log(T), 1e-12);
  EXPECT_GT(d.envelope(), d.error_scale);
  EXPECT_TRUE(predict_F(two_pi * 7.25 * 7.25).edge);
  EXPECT_THROW(predict_F(5.0), std::domain_error);
}

TEST(Predict, TracksIntegralOfZ) {
  const auto z = find_zeros(10.0, 3000.0, quad_zero_tol);
  const Integrand g[] = {Integrand::of(IntegrandKind::z)};
  const PrefixIntegral F(g, 3000.0, 1e-9, z);
  for (double T : {500.0, 1111.0, 1777.7, 2999.0}) {
    const auto d = predict_F(T);
    EXPECT_LT(std::abs(F.at(0, T) - d.main), 20.0 * d.envelope()) << T;
  }
}
