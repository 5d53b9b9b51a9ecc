#include <gtest/gtest.h>

#include <cmath>

#include "hardy/quad.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

EvalConfig precise() {
  EvalConfig c;
  c.rs_correction_terms = 4;
  return c;
}

// Simpson sums of Z and Z^2 over [0, 50] from one sampling of the eta-series Z.
struct SimpsonRef {
  double z = 0.0;
  double z2 = 0.0;
};

const SimpsonRef& simpson_ref() {
  static const SimpsonRef r = [] {
    const int n = 2000;
    const double h = 50.0 / n;
    SimpsonRef s;
    for (int i = 0; i <= n; ++i) {
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
      const double z = oracle::hardy_z_borwein(i * h);
      s.z += w * z;
      s.z2 += w * z * z;
    }
    s.z *= h / 3.0;
    s.z2 *= h / 3.0;
    return s;
  }();
  return r;
}

}  // namespace

TEST(Integrand, ParseAndName) {
  for (const char* s : {"Z", "|Z|", "Z^2", "Z^3", "|Z|^3", "Z^4"}) EXPECT_EQ(parse_integrand(s).name(), s);
  EXPECT_EQ(parse_integrand("|Z|^1.5").power, 1.5);
  EXPECT_THROW(parse_integrand("Z^5"), std::invalid_argument);
  EXPECT_THROW(parse_integrand("|Z|^x"), std::invalid_argument);
  EXPECT_THROW(Integrand::abs_power(-1.0), std::invalid_argument);
  EXPECT_EQ(Integrand::of(IntegrandKind::abs_z_cubed)(-2.0), 8.0);
}

// Against the true Z the gap is the fast path's own truncation, bounded by
// the integral of its error bound; against Simpson of the same integrand it is
// quadrature alone.
TEST(Integrate, MatchesSimpsonOfOracle) {
  const auto& ref = simpson_ref();
  const auto cfg = precise();
  const auto a = integrate(Integrand::of(IntegrandKind::z), 0.0, 50.0, 1e-9, cfg);
  const auto b = integrate(Integrand::of(IntegrandKind::z_squared), 0.0, 50.0, 1e-9, cfg);
  const double eb = oracle::simpson([&](double t) { return z_fast(t, cfg).err_bound; }, 10.0, 50.0, 400);
  EXPECT_NEAR(a.value, ref.z, eb + 1e-6);
  EXPECT_NEAR(b.value, ref.z2, 2.0 * 3.0 * eb + 1e-6 * ref.z2);
  EXPECT_LT(a.abs_error_est, 1e-6);
  EXPECT_FALSE(a.error_is_lower_bound);

  const auto zf = [&](double t) { return hardy_z(t, cfg); };
  double same = oracle::simpson([](double t) { return z_oracle(t, 30).z; }, 0.0, 10.0, 400);
  double lo = 10.0;
  for (double hi : {two_pi * 4.0, 50.0}) {
    same += oracle::simpson(zf, lo, hi, 4000);
    lo = hi;
  }
  EXPECT_NEAR(a.value, same, 1e-8);
}

TEST(Integrate, BelowFloorUsesNoZeros) {
  const auto r = integrate(Integrand::of(IntegrandKind::z), 0.0, 9.0, 1e-10);
  EXPECT_NEAR(r.value, oracle::simpson(oracle::hardy_z_borwein, 0.0, 9.0, 200), 1e-7);
}

TEST(Integrate, AbsPowerTwoEqualsSquare) {
  const auto a = integrate(Integrand::abs_power(2.0), 100.0, 300.0, 1e-9);
  const auto b = integrate(Integrand::of(IntegrandKind::z_squared), 100.0, 300.0, 1e-9);
  EXPECT_NEAR(a.value, b.value, 1e-10 * b.value);
}

TEST(Integrate, RejectsBadWindows) {
  EXPECT_THROW(integrate(Integrand{}, 5.0, 5.0, 1e-8), std::invalid_argument);
  EXPECT_THROW(integrate(Integrand{}, -1.0, 5.0, 1e-8), std::invalid_argument);
  EXPECT_THROW(integrate(Integrand{}, 1.0, 5.0, 0.0), std::invalid_argument);
}

TEST(Split, SignedPartsAddUp) {
  const auto z = find_zeros(10.0, 2000.0, quad_zero_tol);
  const Integrand g[] = {Integrand::of(IntegrandKind::z), Integrand::of(IntegrandKind::abs_z),
                         Integrand::of(IntegrandKind::z_cubed), Integrand::of(IntegrandKind::abs_z_cubed)};
  const auto s = integrate_split(g, 1000.0, 2000.0, 1e-8, &z);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(s.plus[k].value + s.minus[k].value, s.total[k].value, 1e-9 * s.total[1].value);
  EXPECT_GT(s.plus[0].value, 0.0);
  EXPECT_LT(s.minus[0].value, 0.0);
  EXPECT_NEAR(s.plus[0].value - s.minus[0].value, s.total[1].value, 1e-7 * s.total[1].value);
  EXPECT_NEAR(s.plus[2].value - s.minus[2].value, s.total[3].value, 1e-7 * s.total[3].value);
}

TEST(Split, WorkerCountDoesNotMatter) {
  const auto z = find_zeros(10.0, 1000.0, quad_zero_tol);
  const Integrand g[] = {Integrand::of(IntegrandKind::z_squared)};
  QuadOptions four;
  four.workers = 4;
  const auto a = integrate_split(g, 500.0, 1000.0, 1e-8, &z);
  const auto b = integrate_split(g, 500.0, 1000.0, 1e-8, &z, {}, four);
  EXPECT_EQ(a.total[0].value, b.total[0].value);
}

TEST(Split, SuspectTableFlagsLowerBound) {
  auto z = find_zeros(10.0, 200.0, quad_zero_tol);
  z.suspect.push_back({120.0, 130.0});
  const auto r = integrate(Integrand::of(IntegrandKind::z), 100.0, 200.0, 1e-8, z);
  EXPECT_TRUE(r.error_is_lower_bound);
}

TEST(Panels, CutAtZerosAndSquares) {
  const auto z = find_zeros(10.0, 400.0, quad_zero_tol);
  const auto e = panel_edges(100.0, 400.0, &z);
  EXPECT_EQ(e.front(), 100.0);
  EXPECT_EQ(e.back(), 400.0);
  for (double g : z.slice(100.0, 400.0).ordinates) EXPECT_TRUE(std::binary_search(e.begin(), e.end(), g));
  for (int m = 4; m <= 7; ++m) EXPECT_TRUE(std::binary_search(e.begin(), e.end(), two_pi * m * m));
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LE(e[i] - e[i - 1], max_panel_width(400.0) * (1 + 1e-12));
}

TEST(SignPartition, MeasuresFillWindow) {
  const auto p = sign_partition(1000.0, 2000.0);
  EXPECT_NEAR(p.measure(1) + p.measure(-1), 1000.0, 1e-9);
  for (std::size_t i = 0; i + 1 < p.signs.size(); ++i) EXPECT_NE(p.signs[i], p.signs[i + 1]);
}

TEST(Prefix, AgreesWithDirectIntegrals) {
  const auto z = find_zeros(10.0, 3000.0, quad_zero_tol);
  const Integrand g[] = {Integrand::of(IntegrandKind::z), Integrand::of(IntegrandKind::z_squared)};
  const PrefixIntegral F(g, 3000.0, 1e-9, z);
  EXPECT_EQ(F.index_of(IntegrandKind::z_squared), 1u);
  EXPECT_THROW(F.index_of(IntegrandKind::z_fourth), std::invalid_argument);
  for (double t : {5.0, 10.0, 123.456, 999.9, 2345.6, 3000.0}) {
    const auto d0 = integrate(g[0], 0.0, t, 1e-9, z);
    const auto d1 = integrate(g[1], 0.0, t, 1e-9, z);
    EXPECT_NEAR(F.at(0, t), d0.value, 1e-6) << t;
    EXPECT_NEAR(F.at(1, t), d1.value, 1e-9 * d1.value + 1e-6) << t;
  }
  for (double t : {50.5, 777.7}) EXPECT_NEAR(F.integrand_at(0, t), hardy_z(t), 1e-6);
  EXPECT_THROW(F.at(0, 3001.0), std::out_of_range);
  // Monotone primitive of Z^2.
  double prev = 0.0;
  for (double t = 0.0; t <= 3000.0; t += 7.3) {
    const double v = F.at(1, t);
    EXPECT_GE(v, prev - 1e-9);
    prev = v;
  }
}
