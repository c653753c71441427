#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "beurling/error.hpp"
#include "beurling/transform.hpp"

using namespace beurling;

namespace {

const PlanarDomain kDisk = PlanarDomain::disk(1.0);

GridFunction disk_indicator(double side, int n) {
  return GridFunction::sample(Square{0.0, side}, n,
                              [](Complex z) { return Complex(kDisk.contains(z) ? 1.0 : 0.0, 0.0); });
}

Complex bump(Complex z, Complex c, double r) {
  const double s = std::norm(z - c) / (r * r);
  return s < 1.0 ? Complex(std::exp(1.0 - 1.0 / (1.0 - s)), 0.0) : Complex(0.0, 0.0);
}

double l2(const GridFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(s);
}

double interior_max(const GridFunction& b, double rho_min) {
  double worst = 0.0;
  for (int i = 0; i < b.n(); ++i) {
    for (int j = 0; j < b.n(); ++j) {
      if (1.0 - std::abs(b.cell_center(i, j)) >= rho_min) worst = std::max(worst, std::abs(b(i, j)));
    }
  }
  return worst;
}

}  // namespace

TEST(Kernel, Value) {
  EXPECT_NEAR(std::abs(beurling_kernel(Complex(2.0, 0.0)) + 1.0 / (4.0 * std::numbers::pi)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(beurling_kernel(Complex(0.0, 1.0)) - 1.0 / std::numbers::pi), 0.0, 1e-16);
}

TEST(Kernel, DifferenceBound) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int violations = 0;
  int tested = 0;
  while (tested < 10000) {
    const Complex z(u(rng), u(rng));
    const Complex w = z + 0.1 * Complex(u(rng), u(rng));
    const Complex p = 4.0 * Complex(u(rng), u(rng));
    if (std::abs(p - z) < 2.0 * std::abs(z - w) || std::abs(z - w) == 0.0) continue;
    ++tested;
    const double lhs = std::abs(beurling_kernel(p - z) - beurling_kernel(p - w)) * std::numbers::pi;
    if (lhs > 12.0 * std::abs(z - w) / std::pow(std::abs(p - z), 3)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(Spectral, ZeroMapsToZero) {
  const GridFunction f(Square{0.0, 4.0}, 32);
  const auto b = beurling_spectral(f);
  for (const auto& v : b.values()) EXPECT_EQ(v, Complex(0.0, 0.0));
}

TEST(Spectral, DiskIndicatorOracle) {
  const auto b = beurling_spectral(disk_indicator(4.0, 256), 4);
  EXPECT_LE(std::abs(b(128, 128)), 0.05);
  EXPECT_LE(interior_max(b, 0.25), 0.05);
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) {
    for (int j = 0; j < 256; ++j) {
      const Complex z = b.cell_center(i, j);
      if (std::abs(z) < 1.5 || std::abs(z) > 1.9) continue;
      const Complex exact = -1.0 / (z * z);
      worst = std::max(worst, std::abs(b(i, j) - exact) / std::abs(exact));
    }
  }
  EXPECT_LE(worst, 0.03);
  EXPECT_TRUE(b.all_finite());
}

TEST(Spectral, InteriorErrorShrinksWithResolution) {
  double previous = kInfinity;
  for (int n : {64, 128, 256, 512}) {
    const double e = interior_max(beurling_spectral(disk_indicator(4.0, n), 4), 0.25);
    EXPECT_LE(e, 1.1 * previous) << "n = " << n;
    previous = e;
  }
}

TEST(Spectral, MeanZeroIsometry) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    GridFunction f(Square{0.0, 2.0}, 32);
    Complex sum = 0.0;
    for (int i = 8; i < 24; ++i) {
      for (int j = 8; j < 24; ++j) {
        f(i, j) = Complex(g(rng), g(rng));
        sum += f(i, j);
      }
    }
    for (int i = 8; i < 24; ++i) {
      for (int j = 8; j < 24; ++j) f(i, j) -= sum / 256.0;
    }
    const auto b = beurling_spectral_padded(f, 4);
    EXPECT_NEAR(l2(b), l2(f), 1e-10 * l2(f));
  }
}

TEST(Spectral, DcCorrectedIsometry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GridFunction f(Square{0.0, 2.0}, 32);
  Complex sum = 0.0;
  for (int i = 8; i < 24; ++i) {
    for (int j = 8; j < 24; ++j) {
      f(i, j) = Complex(u(rng), u(rng));
      sum += f(i, j);
    }
  }
  const auto b = beurling_spectral_padded(f, 4);
  const double cells = 128.0 * 128.0;
  const double expected = std::norm(l2(f)) - std::norm(sum) / cells;
  EXPECT_NEAR(std::norm(l2(b)), expected, 1e-10 * expected);
}

TEST(Spectral, PlaneWaveMultiplier) {
  // A wide bump times e^{i ξ·x}: B acts as conj(ξ)/ξ at the bump centre.
  const int n = 256;
  const Square box{0.0, 8.0};
  const double xi1 = 2.0 * std::numbers::pi * 48.0 / 32.0;
  const double xi2 = 2.0 * std::numbers::pi * 20.0 / 32.0;
  const Complex xi(xi1, xi2);
  const auto f = GridFunction::sample(box, n, [&](Complex z) {
    return bump(z, 0.0, 1.9) * std::exp(Complex(0.0, xi1 * z.real() + xi2 * z.imag()));
  });
  const auto b = beurling_spectral(f, 4);
  const Complex expected = std::conj(xi) / xi * f(n / 2, n / 2);
  EXPECT_NEAR(std::abs(b(n / 2, n / 2) - expected), 0.0, 0.02 * std::abs(expected));
}

TEST(Spectral, Linearity) {
  const Square box{0.0, 4.0};
  const auto f = GridFunction::sample(box, 64, [](Complex z) { return bump(z, 0.2, 0.8); });
  const auto g = GridFunction::sample(box, 64, [](Complex z) { return z * bump(z, -0.3, 0.6); });
  const Complex a(2.0, -1.0);
  const Complex c(0.5, 3.0);
  const auto lhs = restricted_beurling(kDisk, a * f + c * g, Method::spectral);
  const auto rhs = a * restricted_beurling(kDisk, f, Method::spectral) + c * restricted_beurling(kDisk, g, Method::spectral);
  for (std::size_t k = 0; k < lhs.values().size(); ++k) EXPECT_NEAR(std::abs(lhs.values()[k] - rhs.values()[k]), 0.0, 1e-13);
}

TEST(Spectral, SupportViolationRejected) {
  const auto f = GridFunction::sample(Square{0.0, 2.0}, 16, [](Complex) { return Complex(1.0, 0.0); });
  EXPECT_THROW(beurling_spectral(f), PreconditionError);
  const GridFunction zero(Square{0.0, 2.0}, 16);
  EXPECT_THROW(beurling_spectral(zero, 3), PreconditionError);
}

TEST(Direct, Examples) {
  const GridFunction zero(Square{0.0, 4.0}, 32);
  EXPECT_EQ(beurling_direct(zero, 0.3, 0.25), Complex(0.0, 0.0));

  const auto chi128 = disk_indicator(4.0, 128);
  EXPECT_LE(std::abs(beurling_direct(chi128, 0.0, 2.0 * chi128.spacing())), 0.1);

  const auto chi = disk_indicator(6.0, 128);
  const Complex v = beurling_direct(chi, 2.0, 2.0 * chi.spacing());
  EXPECT_NEAR(std::abs(v + 0.25), 0.0, 0.05 * 0.25);
}

TEST(Direct, Preconditions) {
  const auto chi = disk_indicator(4.0, 32);
  EXPECT_THROW(beurling_direct(chi, Complex(3.0, 0.0), 0.5), DomainError);
  EXPECT_THROW(beurling_direct(chi, 0.0, chi.spacing()), PreconditionError);
}

namespace {

double method_gap(int n) {
  const auto f = GridFunction::sample(Square{0.0, 4.0}, n, [](Complex z) { return bump(z, Complex(0.1, -0.1), 0.8); });
  const auto s = restricted_beurling(kDisk, f, Method::spectral);
  const auto d = restricted_beurling(kDisk, f, Method::direct);
  double sup = 0.0;
  double gap = 0.0;
  for (std::size_t k = 0; k < s.values().size(); ++k) {
    sup = std::max(sup, std::abs(s.values()[k]));
    gap = std::max(gap, std::abs(s.values()[k] - d.values()[k]));
  }
  return gap / sup;
}

}  // namespace

TEST(Methods, DiscrepancyIsSecondOrder) {
  const double g64 = method_gap(64);
  const double g128 = method_gap(128);
  const double g256 = method_gap(256);
  EXPECT_GT(g64 / g128, 3.0);
  EXPECT_GT(g128 / g256, 3.0);
  EXPECT_LE(g256, 0.01);
}

TEST(Methods, SpectralAccurateAtCoarseResolution) {
  const auto fn = [](Complex z) { return bump(z, Complex(0.1, -0.1), 0.8); };
  const auto coarse = GridFunction::sample(Square{0.0, 4.0}, 64, fn);
  const auto fine = GridFunction::sample(Square{0.0, 4.0}, 1024, fn);
  const auto s = beurling_spectral(coarse, 4);
  double sup = 0.0;
  double err = 0.0;
  for (int i = 16; i < 48; i += 5) {
    for (int j = 16; j < 48; j += 5) {
      const Complex ref = beurling_direct(fine, s.cell_center(i, j), 2.0 * fine.spacing());
      sup = std::max(sup, std::abs(ref));
      err = std::max(err, std::abs(s(i, j) - ref));
    }
  }
  EXPECT_LE(err, 0.01 * sup);
}

TEST(Restricted, ConstantOnDisk) {
  const auto one = GridFunction::sample(Square{0.0, 4.0}, 256, [](Complex) { return Complex(1.0, 0.0); });
  const auto b = restricted_beurling(kDisk, one, Method::spectral);
  EXPECT_LE(interior_max(b, 0.25), 0.05);
  const auto in = membership(kDisk, b);
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (!in[k]) EXPECT_EQ(b.values()[k], Complex(0.0, 0.0));
  }
}

TEST(Restricted, BoxMismatch) {
  const auto f = GridFunction::sample(Square{0.0, 1.0}, 16, [](Complex) { return Complex(1.0, 0.0); });
  try {
    restricted_beurling(kDisk, f, Method::spectral);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("box mismatch"), std::string::npos);
  }
}

TEST(Mask, ZeroOutsideDomain) {
  const auto f = GridFunction::sample(Square{0.0, 4.0}, 16, [](Complex) { return Complex(2.0, 0.0); });
  const auto g = mask(kDisk, f);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) EXPECT_EQ(g(i, j), kDisk.contains(g.cell_center(i, j)) ? f(i, j) : Complex(0.0, 0.0));
  }
}

TEST(ZeroPad, EmbedsAtCentre) {
  const auto f = GridFunction::sample(Square{Complex(1.0, 1.0), 2.0}, 4, [](Complex z) { return z; });
  const auto p = zero_pad(f, 4);
  EXPECT_EQ(p.n(), 16);
  EXPECT_DOUBLE_EQ(p.box().side, 8.0);
  EXPECT_EQ(p(6, 6), f(0, 0));
  EXPECT_EQ(p(0, 0), Complex(0.0, 0.0));
}
