#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "beurling/error.hpp"
#include "beurling/geometry.hpp"

using namespace beurling;

namespace {

PlanarDomain trefoil() { return PlanarDomain::star(1.0, {{3, 0.1, 0.0}}); }

double brute_distance(const PlanarDomain& d, Complex z) {
  double best = kInfinity;
  constexpr int kSamples = 200000;
  for (int k = 0; k < kSamples; ++k) {
    best = std::min(best, std::abs(d.boundary_point(2.0 * std::numbers::pi * k / kSamples) - z));
  }
  return best;
}

}  // namespace

TEST(Square, DilateAndContainment) {
  const Square q{Complex(0.5, -0.25), 0.5};
  const Square big = q.dilate(3.0);
  EXPECT_DOUBLE_EQ(big.side, 1.5);
  EXPECT_EQ(big.center, q.center);
  EXPECT_DOUBLE_EQ(q.area(), 0.25);
  EXPECT_TRUE(q.contains(q.lo()));
  EXPECT_FALSE(q.contains(q.hi()));
  EXPECT_TRUE(big.contains(q));
  EXPECT_FALSE(q.contains(big));
  EXPECT_TRUE(q.contains(q));
}

TEST(Domain, Membership) {
  const auto disk = PlanarDomain::disk(1.0);
  EXPECT_TRUE(disk.contains(0.0));
  EXPECT_FALSE(disk.contains(2.0));
  EXPECT_TRUE(trefoil().contains(1.05));
  EXPECT_FALSE(trefoil().contains(Complex(0.0, 1.05)));
}

TEST(Domain, BoundaryDistanceExamples) {
  const auto disk = PlanarDomain::disk(1.0);
  EXPECT_DOUBLE_EQ(disk.boundary_distance(0.5), 0.5);
  EXPECT_DOUBLE_EQ(disk.boundary_distance(2.0), 1.0);
  EXPECT_NEAR(trefoil().boundary_distance(0.0), 0.9, 1e-9);
}

TEST(Domain, StarDistanceMatchesBruteForce) {
  const auto d = PlanarDomain::star(1.0, {{2, 0.08, 0.0}, {5, 0.0, 0.03}});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  for (int k = 0; k < 40; ++k) {
    const Complex z(u(rng), u(rng));
    EXPECT_NEAR(d.boundary_distance(z), brute_distance(d, z), 1e-6) << z;
  }
}

TEST(Domain, DistanceIsOneLipschitz) {
  const auto d = make_test_domain(Modulus::power(0.5), 0.1, 6);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int k = 0; k < 10000; ++k) {
    const Complex z(u(rng), u(rng));
    const Complex w(u(rng), u(rng));
    EXPECT_LE(std::abs(d.boundary_distance(z) - d.boundary_distance(w)), std::abs(z - w) + 1e-9);
  }
}

TEST(Domain, InscribedDiskLiesInside) {
  const auto d = make_test_domain(Modulus::log(1.0), 0.2, 6);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  int checked = 0;
  while (checked < 300) {
    const Complex z(u(rng), u(rng));
    if (!d.contains(z)) continue;
    ++checked;
    const double rho = d.boundary_distance(z);
    ASSERT_GT(rho, 0.0);
    for (int k = 0; k < 64; ++k) {
      const Complex w = z + rho * (1.0 - 1e-6) * std::polar(1.0, 2.0 * std::numbers::pi * k / 64);
      EXPECT_TRUE(d.contains(w)) << z << " direction " << k;
    }
  }
}

TEST(Domain, AreaOfDisk) {
  EXPECT_NEAR(PlanarDomain::disk(1.0).area(), std::numbers::pi, 1e-12);
  EXPECT_NEAR(PlanarDomain::disk(0.5).area(), std::numbers::pi / 4.0, 1e-12);
}

TEST(Domain, PerturbationAreaIsSecondOrder) {
  const auto m = Modulus::power(0.5);
  for (int depth : {1, 4}) {
    for (double a : {0.05, 0.1}) {
      double sum_sq = 0.0;
      for (int k = 1; k <= depth; ++k) sum_sq += std::pow(std::exp2(-k) * m(std::exp2(-k)), 2);
      const double plus = make_test_domain(m, a, depth).area();
      const double minus = make_test_domain(m, -a, depth).area();
      const double base = make_test_domain(m, 0.0, depth).area();
      EXPECT_NEAR(plus - minus, 0.0, 1e-10);
      EXPECT_NEAR(plus + minus - 2.0 * base, a * a * std::numbers::pi * sum_sq, 1e-10);
    }
  }
}

TEST(Domain, TestDomainGeometry) {
  const auto flat = make_test_domain(Modulus::power(0.5), 0.0, 5);
  for (double t : {0.0, 1.0, 2.5}) EXPECT_DOUBLE_EQ(flat.radius_at(t), 1.0);

  const auto m = Modulus::power(0.5);
  double bound = 1.0;
  for (int k = 1; k <= 8; ++k) bound -= 0.2 * std::exp2(-k) * m(std::exp2(-k));
  const auto d = make_test_domain(m, 0.2, 8);
  EXPECT_GE(d.r_min(), bound - 1e-12);
  EXPECT_GT(d.r_min(), 0.8);

  EXPECT_THROW(make_test_domain(m, 0.2, 0), ValidationError);
}

TEST(Domain, LargeAmplitudeRejected) {
  EXPECT_THROW(PlanarDomain::star(1.0, {{2, 1.5, 0.0}}), AmplitudeError);
  EXPECT_THROW(PlanarDomain::disk(-1.0), ValidationError);
}

TEST(Domain, ProfileDerivatives) {
  const auto d = PlanarDomain::star(1.0, {{3, 0.1, 0.05}});
  for (double t : {0.2, 1.3, 4.0}) {
    const double eps = 1e-5;
    EXPECT_NEAR(d.radius_derivative(t), (d.radius_at(t + eps) - d.radius_at(t - eps)) / (2 * eps), 1e-8);
    EXPECT_NEAR(d.radius_second_derivative(t),
                (d.radius_derivative(t + eps) - d.radius_derivative(t - eps)) / (2 * eps), 1e-7);
  }
}

TEST(Domain, FromJson) {
  const auto disk = PlanarDomain::from_json({{"kind", "disk"}, {"radius", 1.0}});
  EXPECT_EQ(disk.kind(), PlanarDomain::Kind::disk);
  const auto star = PlanarDomain::from_json({{"kind", "star"}, {"mean", 1.0}, {"harmonics", {{3, 0.1, 0.0}}}});
  EXPECT_NEAR(star.radius_at(0.0), 1.1, 1e-15);
  const auto test = PlanarDomain::from_json(
      {{"kind", "star"}, {"amplitude", 0.1}, {"depth", 6}, {"modulus", {{"family", "power"}, {"alpha", 0.5}}}});
  EXPECT_DOUBLE_EQ(test.radius_at(0.7), make_test_domain(Modulus::power(0.5), 0.1, 6).radius_at(0.7));
  EXPECT_THROW(PlanarDomain::from_json({{"kind", "ellipse"}}), ConfigError);
}

TEST(NormalModulus, UnitDisk) {
  // |n(s₁) − n(s₂)| = 2 sin(s/2); against √s below 1 and the frozen value 1
  // beyond, the supremum 2 is reached at antipodal points.
  const double c = normal_modulus_constant(PlanarDomain::disk(1.0), Modulus::power(0.5));
  EXPECT_NEAR(c, 2.0, 1e-3);
  EXPECT_LE(c, 2.0 * std::sqrt(std::numbers::pi) * std::numbers::pi);
}

TEST(NormalModulus, SmoothAndLacunaryStars) {
  const auto m = Modulus::power(0.5);
  const auto ellipse = PlanarDomain::star(1.0, {{2, 0.05, 0.0}});
  const double c = normal_modulus_constant(ellipse, m);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_EQ(c, normal_modulus_constant(ellipse, m));

  const auto log1 = Modulus::log(1.0);
  const double c2 = normal_modulus_constant(make_test_domain(log1, 0.2, 10), log1);
  EXPECT_TRUE(std::isfinite(c2));
}
