#include <gtest/gtest.h>

#include <cmath>

#include "hardy/special.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

EvalConfig with_terms(int k) {
  EvalConfig c;
  c.rs_correction_terms = k;
  return c;
}

}  // namespace

TEST(Theta, MatchesStirlingOracle) {
  for (double t : {1.0, 5.0, 9.99, 10.0, 14.1, 50.0, 200.0, 1000.0, 1e5}) {
    const double ref = static_cast<double>(oracle::theta(t));
    EXPECT_NEAR(theta(t), ref, 1e-10 * std::max(1.0, std::abs(ref))) << t;
  }
}

TEST(Theta, DerivativeMatchesDifference) {
  for (double t : {20.0, 300.0, 5000.0}) {
    const double h = 1e-2;
    const auto th = [](double x) { return oracle::theta(x); };
    const double d = static_cast<double>((th(t - 2 * h) - 8 * th(t - h) + 8 * th(t + h) - th(t + 2 * h)) / (12.0L * h));
    EXPECT_NEAR(theta_derivative(t), d, 1e-9) << t;
  }
}

// The first Gram point g_0 = 17.8455995...: theta(g_0) = 0.
TEST(Theta, FirstGramPoint) {
  EXPECT_NEAR(static_cast<double>(oracle::theta(17.8455995)), 0.0, 1e-7);
  EXPECT_NEAR(theta(17.8455995), 0.0, 1e-7);
}

TEST(Oracle, AgreesWithBorweinSeries) {
  for (double t : {0.0, 3.0, 14.0, 18.0, 25.0, 40.0, 59.0}) {
    const auto z = z_oracle(t, 30);
    EXPECT_NEAR(z.z, oracle::hardy_z_borwein(t), 1e-14) << t;
    EXPECT_LT(z.imag_residual, z.err_bound);
  }
}

TEST(Oracle, ValueAtOrigin) {
  // Z(0) = zeta(1/2) = -1.4603545088095868...
  EXPECT_NEAR(z_oracle(0.0, 30).z, -1.4603545088095868, 1e-15);
  EXPECT_EQ(z_oracle(0.0, 30).z_digits.substr(0, 12), "-1.460354508");
}

TEST(Oracle, RejectsBadArguments) {
  EXPECT_THROW(z_oracle(1.0, 10), std::invalid_argument);
  EXPECT_THROW(z_oracle(-1.0, 30), std::domain_error);
  EXPECT_THROW(z_fast(9.0), std::domain_error);
  EXPECT_THROW(z_fast(20.0, with_terms(5)), std::invalid_argument);
}

// The low-t bound constants in rs_truncation_bound are empirical; this keeps
// them honest against the independent eta-series oracle.
TEST(FastPath, WithinBoundBelow60AllTerms) {
  for (int k = 0; k <= 4; ++k) {
    const auto cfg = with_terms(k);
    for (double t = 10.0; t <= 60.0; t += 0.731) {
      const auto f = z_fast(t, cfg);
      EXPECT_LE(std::abs(f.z - oracle::hardy_z_borwein(t)), f.err_bound) << "k=" << k << " t=" << t;
    }
  }
}

TEST(FastPath, WithinBoundUpTo200AllTerms) {
  std::vector<double> ts;
  for (double t = 60.0; t < 200.0; t += 4.37) ts.push_back(t);
  std::vector<double> ref;
  for (double t : ts) ref.push_back(z_oracle(t, 25).z);
  for (int k = 0; k <= 4; ++k) {
    const auto cfg = with_terms(k);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto f = z_fast(ts[i], cfg);
      EXPECT_LE(std::abs(f.z - ref[i]), f.err_bound) << "k=" << k << " t=" << ts[i];
    }
  }
}

TEST(FastPath, ErrorShrinksWithTerms) {
  double prev = 1.0;
  for (int k = 0; k <= 4; ++k) {
    const double e = std::abs(z_fast(1000.5, with_terms(k)).z - z_oracle(1000.5, 25).z);
    EXPECT_LE(e, std::max(prev, 1e-12)) << k;
    prev = e;
  }
}

TEST(FastPath, SignAt18) {
  EXPECT_GT(oracle::hardy_z_borwein(18.0), 0.0);
  EXPECT_GT(z_fast(18.0).z, 0.0);
}

TEST(FastPath, MeanSquareOfSamples) {
  const double ref = oracle::hardy_z_borwein(40.0);
  const double e = z_fast(40.0).err_bound;
  EXPECT_NEAR(zeta_abs_sq(40.0), ref * ref, 2.0 * std::abs(ref) * e + e * e);
  EXPECT_EQ(hardy_z(5.0), z_oracle(5.0, 30).z);
}
