#include <gtest/gtest.h>

#include <cmath>

#include "hardy/distribution.hpp"

using namespace hardy;

namespace {

const ZeroTable& zeros_to(double hi) {
  static const ZeroTable z = find_zeros(10.0, 4100.0, quad_zero_tol);
  EXPECT_LE(hi, z.hi);
  return z;
}

}  // namespace

TEST(SignedIntegrals, PartsMatchWholeWindow) {
  const auto& z = zeros_to(4000.0);
  for (double T : {100.0, 700.0, 2000.0}) {
    const auto p = i_plus_minus(T, 1e-8, z);
    const double whole = integrate(Integrand::of(IntegrandKind::z), T, 2 * T, 1e-8, z).value;
    const double abs = integrate(Integrand::of(IntegrandKind::abs_z), T, 2 * T, 1e-8, z).value;
    EXPECT_NEAR(p.plus + p.minus, whole, 1e-6 * abs) << T;
    EXPECT_NEAR(p.plus - p.minus, abs, 1e-6 * abs) << T;
    EXPECT_GT(p.plus, 0.0);
    EXPECT_LT(p.minus, 0.0);
  }
}

TEST(SignedIntegrals, OwnZeroTableGivesSameAnswer) {
  const auto a = i_plus_minus(300.0, 1e-8, zeros_to(600.0));
  const auto b = i_plus_minus(300.0, 1e-8);
  EXPECT_NEAR(a.plus, b.plus, 1e-7 * a.plus);
  EXPECT_NEAR(a.minus, b.minus, 1e-7 * a.plus);
}

TEST(Measures, FillTheWindow) {
  const auto& z = zeros_to(4000.0);
  for (double T : {100.0, 1000.0, 2000.0}) {
    const auto j = j_measures(T, z);
    EXPECT_NEAR(j.plus + j.minus, T, 1e-9 * T);
    EXPECT_GT(j.plus, 0.3 * T);
    EXPECT_GT(j.minus, 0.3 * T);
  }
}

// Brute force: fraction of a fine grid with Z > 0.
TEST(Measures, AgreeWithGridCount) {
  const double T = 500.0, h = 1e-3;
  std::size_t pos = 0, n = 0;
  for (double t = T + 0.5 * h; t < 2 * T; t += h, ++n) pos += hardy_z(t) > 0.0;
  const auto j = j_measures(T, zeros_to(1000.0));
  EXPECT_NEAR(j.plus, static_cast<double>(pos) * h, 0.5);
}

TEST(GapIdentity, ResidualWithinBoundaryGaps) {
  const auto& z = zeros_to(4000.0);
  for (double T : {200.0, 1000.0, 2000.0}) {
    const auto r = alternating_gap_identity(T, z);
    EXPECT_LE(std::abs(*r.residual), boundary_gap_allowance(z, T) + 1e-6) << T;
  }
  // Shifting the pairing takes the complementary gaps; both sum to the span.
  const double T = 1000.0;
  const double both = alternating_gap_sum(z, T, 0) + alternating_gap_sum(z, T, 1);
  const auto first = z.lower_index(T + 1e-12);
  const auto last = z.lower_index(2 * T + 1e-12) - 1;
  EXPECT_NEAR(both, z.ordinates[last] - z.ordinates[first - 1], 1e-9);
  EXPECT_THROW(alternating_gap_identity(T, z.slice(100.0, 4000.0)), std::invalid_argument);
}

TEST(GapIdentity, MaxGapIsAGap) {
  const auto& z = zeros_to(4000.0);
  const double g = max_window_gap(z, 1000.0);
  EXPECT_GT(g, 0.0);
  EXPECT_LT(g, 3.0);
}

TEST(SmallValues, MatchesGridCount) {
  const double T = 300.0, c = 0.5, h = 1e-3;
  std::size_t in = 0;
  for (double t = 10.0 + 0.5 * h; t < T; t += h) in += std::abs(hardy_z(t)) <= c;
  const auto r = small_values_measure(T, c, 1e-10);
  EXPECT_NEAR(r.value, static_cast<double>(in) * h, 0.05);
  EXPECT_NEAR(*r.predicted, 0.5 * T, 0.0);
}

TEST(SmallValues, MonotoneInLevelAndWorkerFree) {
  const double a = small_values_measure(400.0, 0.25, 1e-9).value;
  const double b = small_values_measure(400.0, 1.0, 1e-9).value;
  const double b4 = small_values_measure(400.0, 1.0, 1e-9, {}, 4).value;
  EXPECT_LT(a, b);
  EXPECT_LT(b, 390.0);
  EXPECT_EQ(b, b4);
  EXPECT_THROW(small_values_measure(50.0, 1.0, 1e-9), std::invalid_argument);
  EXPECT_THROW(small_values_measure(400.0, 0.0, 1e-9), std::invalid_argument);
}

TEST(OneSidedCubic, SidesDecomposeMoments) {
  const auto r = one_sided_cubic(1000.0, 1e-8, zeros_to(2000.0));
  EXPECT_NEAR(r.plus.value + r.minus.value, r.cube.value, 1e-7 * r.abs_cube.value);
  EXPECT_NEAR(r.plus.value - r.minus.value, r.abs_cube.value, 1e-7 * r.abs_cube.value);
  EXPECT_NEAR(*r.plus.residual - *r.minus.residual, 0.0, 1e-6 * r.abs_cube.value);
}

TEST(Clt, DeterministicAndWorkerFree) {
  const auto a = selberg_clt_sample(1e4, 2000, 99);
  const auto b = selberg_clt_sample(1e4, 2000, 99, {}, 3);
  const auto c = selberg_clt_sample(1e4, 2000, 100);
  EXPECT_EQ(a.x, b.x);
  EXPECT_NE(a.x, c.x);
  std::uint64_t total = 0;
  for (auto n : a.histogram.counts) total += n;
  EXPECT_EQ(total, 2000u);
  for (double t : a.t) {
    EXPECT_GE(t, 1e4);
    EXPECT_LT(t, 2e4);
  }
  // Roughly centred, spread of order one.
  EXPECT_LT(std::abs(a.mean), 0.5);
  EXPECT_GT(a.stddev, 0.5);
  EXPECT_LT(a.stddev, 2.0);
  EXPECT_THROW(selberg_clt_sample(100.0, 2000, 1), std::invalid_argument);
  EXPECT_THROW(selberg_clt_sample(1e4, 10, 1), std::invalid_argument);
}

TEST(Clt, HistogramClampsOutliers) {
  const auto h = make_histogram({-100.0, 0.01, 100.0}, -1.0, 1.0, 4);
  EXPECT_EQ(h.counts.front(), 1u);
  EXPECT_EQ(h.counts[2], 1u);
  EXPECT_EQ(h.counts.back(), 1u);
  EXPECT_EQ(h.edges.size(), 5u);
}
