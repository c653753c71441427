#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "beurling/error.hpp"
#include "beurling/seminorms.hpp"
#include "beurling/transform.hpp"

using namespace beurling;

namespace {

const PlanarDomain kDisk = PlanarDomain::disk(1.0);
const Modulus kHalf = Modulus::power(0.5);

std::function<Complex(Complex)> lacunary(const Modulus& m, int terms, double angle, double phase) {
  return [=](Complex z) {
    const double x = z.real() * std::cos(angle) + z.imag() * std::sin(angle);
    double s = 0.0;
    for (int k = 1; k <= terms; ++k) s += m(std::exp2(-k)) * std::cos(std::exp2(k) * x + k * phase);
    return Complex(s, 0.0);
  };
}

GridFunction real_part(Square box, int n) {
  return GridFunction::sample(box, n, [](Complex z) { return Complex(z.real(), 0.0); });
}

}  // namespace

TEST(SquareMean, Examples) {
  const Square box{0.0, 4.0};
  const auto c = GridFunction::sample(box, 64, [](Complex) { return Complex(2.0, -1.0); });
  EXPECT_NEAR(std::abs(square_mean(c, Square{Complex(0.3, 0.2), 0.5}) - Complex(2.0, -1.0)), 0.0, 1e-14);
  const auto x = real_part(box, 64);
  EXPECT_NEAR(std::abs(square_mean(x, Square{0.0, 1.0})), 0.0, 1e-14);
  EXPECT_NEAR(square_mean(x, Square{Complex(0.5, 0.0), 0.5}).real(), 0.5, x.spacing());
  EXPECT_THROW(square_mean(x, Square{Complex(1.9, 0.0), 0.5}), PreconditionError);
}

TEST(DomainMean, Examples) {
  const Square box{0.0, 4.0};
  const auto c = GridFunction::sample(box, 128, [](Complex) { return Complex(3.0, 0.0); });
  EXPECT_NEAR(std::abs(domain_mean(c, Square{Complex(0.9, 0.3), 0.4}, kDisk) - 3.0), 0.0, 1e-14);

  const auto chi = GridFunction::sample(box, 128, [](Complex z) { return Complex(kDisk.contains(z) ? 1.0 : 0.0, 0.0); });
  EXPECT_NEAR(std::abs(domain_mean(chi, Square{1.0, 0.2}, kDisk) - 1.0), 0.0, 1e-14);
  EXPECT_THROW(domain_mean(chi, Square{Complex(1.0, 1.0), 0.2}, kDisk), ResolutionError);

  // Lens Q ∩ D for Q centred at 1 of side 0.2: brute-force mean of Re z.
  double sum = 0.0;
  long count = 0;
  constexpr int kFine = 4000;
  for (int a = 0; a < kFine; ++a) {
    for (int b = 0; b < kFine; ++b) {
      const Complex z(0.9 + 0.2 * (a + 0.5) / kFine, -0.1 + 0.2 * (b + 0.5) / kFine);
      if (std::norm(z) < 1.0) {
        sum += z.real();
        ++count;
      }
    }
  }
  const auto x = real_part(box, 128);
  EXPECT_NEAR(domain_mean(x, Square{1.0, 0.2}, kDisk).real(), sum / count, 2.0 * x.spacing());
  EXPECT_NEAR(sum / count, 0.95, 0.01);
  EXPECT_THROW(domain_mean(x, Square{Complex(1.5, 1.5), 0.1}, kDisk), ResolutionError);
}

TEST(Campanato, ConstantIsZero) {
  const auto c = GridFunction::sample(Square{0.0, 4.0}, 128, [](Complex) { return Complex(5.0, 1.0); });
  EXPECT_NEAR(campanato_seminorm(c, kHalf, CampanatoOptions{}).value, 0.0, 1e-12);
  EXPECT_NEAR(campanato_seminorm(c, kHalf, kDisk, CampanatoOptions{}).value, 0.0, 1e-12);
}

TEST(Campanato, LinearFunctionClosedForm) {
  const auto x = real_part(Square{Complex(0.5, 0.5), 1.0}, 256);
  CampanatoOptions options;
  options.depth = 4;
  const auto e = campanato_seminorm(x, kHalf, options);
  EXPECT_NEAR(e.value, 0.25, 2.0 * x.spacing());
  ASSERT_EQ(e.per_scale.size(), 5u);
  for (const auto& s : e.per_scale) EXPECT_NEAR(s.sup, (s.scale / 4.0) / std::sqrt(s.scale), 1e-12);
  EXPECT_DOUBLE_EQ(e.argmax_square.side, 1.0);
  const double p2 = campanato_seminorm(x, kHalf, CampanatoOptions{2, 4, 4, CenterChoice::mean}).value;
  EXPECT_NEAR(p2, 1.0 / std::sqrt(12.0), 1e-4);
}

TEST(Campanato, PEquivalenceOnLacunaryFamily) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < 20; ++t) {
    const auto f = mask(kDisk, GridFunction::sample(Square{0.0, 4.0}, 128, lacunary(kHalf, 5, u(rng), u(rng))));
    CampanatoOptions options;
    options.depth = 4;
    const double p1 = campanato_seminorm(f, kHalf, kDisk, options).value;
    options.p = 2;
    const double p2 = campanato_seminorm(f, kHalf, kDisk, options).value;
    EXPECT_LE(std::max(p1, p2) / std::min(p1, p2), 4.0);
    EXPECT_GE(p2, p1 * (1.0 - 1e-12));
  }
}

TEST(Campanato, ScalingCovariance) {
  const auto f = mask(kDisk, GridFunction::sample(Square{0.0, 4.0}, 128, lacunary(kHalf, 5, 0.3, 1.1)));
  const auto a = campanato_seminorm(f, kHalf, kDisk, CampanatoOptions{});
  const auto b = campanato_seminorm(Complex(0.0, -3.0) * f, kHalf, kDisk, CampanatoOptions{});
  EXPECT_NEAR(b.value, 3.0 * a.value, 1e-12 * a.value);
  EXPECT_EQ(b.argmax_square.center, a.argmax_square.center);
  EXPECT_EQ(b.argmax_square.side, a.argmax_square.side);
}

TEST(Campanato, TranslationInvariance) {
  const auto g = lacunary(kHalf, 5, 0.7, 0.4);
  const Complex shift(0.75, -1.25);
  const auto f = GridFunction::sample(Square{0.0, 2.0}, 128, g);
  const auto moved = GridFunction::sample(Square{shift, 2.0}, 128, [&](Complex z) { return g(z - shift); });
  const auto a = campanato_seminorm(f, kHalf, CampanatoOptions{});
  const auto b = campanato_seminorm(moved, kHalf, CampanatoOptions{});
  EXPECT_NEAR(a.value, b.value, 1e-12 * a.value);
  EXPECT_NEAR(std::abs(b.argmax_square.center - a.argmax_square.center - shift), 0.0, 1e-12);
}

TEST(Campanato, MonotoneInSquareFamily) {
  const auto f = mask(kDisk, GridFunction::sample(Square{0.0, 4.0}, 128, lacunary(kHalf, 5, 1.3, 0.2)));
  double previous = 0.0;
  for (int depth = 1; depth <= 5; ++depth) {
    CampanatoOptions options;
    options.depth = depth;
    const double v = campanato_seminorm(f, kHalf, kDisk, options).value;
    EXPECT_GE(v, previous);
    previous = v;
  }
  CampanatoOptions options;
  options.shifts = 1;
  const double coarse = campanato_seminorm(f, kHalf, kDisk, options).value;
  options.shifts = 2;
  EXPECT_GE(campanato_seminorm(f, kHalf, kDisk, options).value, coarse);
}

TEST(Campanato, ArbitraryCentresWithinFactorTwo) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < 5; ++t) {
    const auto f = mask(kDisk, GridFunction::sample(Square{0.0, 4.0}, 128, lacunary(kHalf, 5, u(rng), u(rng))));
    CampanatoOptions options;
    options.depth = 4;
    const double mean = campanato_seminorm(f, kHalf, kDisk, options).value;
    options.center = CenterChoice::best_constant;
    const double best = campanato_seminorm(f, kHalf, kDisk, options).value;
    EXPECT_LE(best, mean * (1.0 + 1e-12));
    EXPECT_LE(mean, 2.0 * best);
  }
}

TEST(Campanato, ResolutionGuard) {
  const auto f = real_part(Square{0.0, 1.0}, 64);
  CampanatoOptions options;
  options.depth = 5;
  EXPECT_THROW(campanato_seminorm(f, kHalf, options), ResolutionError);
  options.depth = 4;
  EXPECT_NO_THROW(campanato_seminorm(f, kHalf, options));
}

TEST(Campanato, PerScaleCsv) {
  const auto x = real_part(Square{0.0, 1.0}, 64);
  CampanatoOptions options;
  options.depth = 2;
  std::stringstream s;
  write_csv(s, campanato_seminorm(x, kHalf, options));
  std::string line;
  std::getline(s, line);
  EXPECT_EQ(line, "scale,sup_at_scale,argmax_cx,argmax_cy");
  int rows = 0;
  while (std::getline(s, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Lipschitz, Examples) {
  std::vector<Complex> points;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 0.7);
  for (int k = 0; k < 300; ++k) points.emplace_back(u(rng), u(rng));
  const std::vector<Complex> constant(points.size(), Complex(4.0, 0.0));
  EXPECT_EQ(lipschitz_seminorm(points, constant, kHalf).value, 0.0);

  const auto identity = Modulus::tabulated({{0.5, 0.5}, {1.0, 1.0}});
  const auto e = lipschitz_seminorm(points, points, identity);
  EXPECT_NEAR(e.value, 1.0, 1e-14);
  ASSERT_TRUE(e.argmax_pair.has_value());
}

TEST(Lipschitz, LacunaryStableUnderRefinement) {
  const auto f = lacunary(kHalf, 8, 0.0, 0.0);
  std::vector<double> estimates;
  for (int count : {500, 2000}) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 0.7);
    std::vector<Complex> points;
    std::vector<Complex> values;
    for (int k = 0; k < count; ++k) {
      points.emplace_back(u(rng), u(rng));
      values.push_back(f(points.back()));
    }
    estimates.push_back(lipschitz_seminorm(points, values, kHalf).value);
  }
  EXPECT_TRUE(std::isfinite(estimates[1]));
  EXPECT_LE(std::abs(estimates[1] / estimates[0] - 1.0), 0.30);
}

TEST(Lipschitz, Errors) {
  const std::vector<Complex> far = {0.0, 2.0};
  EXPECT_THROW(lipschitz_seminorm(far, far, kHalf), DomainError);
  const std::vector<Complex> same = {0.5, 0.5};
  EXPECT_THROW(lipschitz_seminorm(same, same, kHalf), DomainError);
}

TEST(Bloch, ConstantIsZero) {
  const auto c = GridFunction::sample(Square{0.0, 4.0}, 128, [](Complex) { return Complex(1.0, 1.0); });
  EXPECT_EQ(bloch_seminorm(c, kDisk, kHalf, Collar{0.125, 0.5}).value, 0.0);
}

TEST(Bloch, IdentityOnDisk) {
  const auto f = GridFunction::sample(Square{0.0, 4.0}, 256, [](Complex z) { return z; });
  EXPECT_NEAR(bloch_seminorm(f, kDisk, kHalf, Collar{0.0625, 0.9}).value, std::sqrt(0.9), 0.02);
}

TEST(Bloch, LogarithmIsNotBloch) {
  const auto m = Modulus::log(1.0);
  const auto f = GridFunction::sample(Square{0.0, 2.0}, 1024, [](Complex z) { return std::log(1.0 - z); });
  const double fine = bloch_seminorm(f, kDisk, m, Collar{std::exp2(-7), 0.5}).value;
  const double coarse = bloch_seminorm(f, kDisk, m, Collar{std::exp2(-3), 0.5}).value;
  EXPECT_GE(fine, 2.0 * coarse);
}

TEST(Bloch, Preconditions) {
  const auto f = GridFunction::sample(Square{0.0, 4.0}, 64, [](Complex z) { return z; });
  EXPECT_THROW(bloch_seminorm(f, kDisk, kHalf, Collar{0.1, 0.5}), PreconditionError);
  EXPECT_THROW(bloch_seminorm(f, kDisk, kHalf, Collar{1.5, 2.0}, Side::interior), ResolutionError);
}

TEST(MeanGap, Examples) {
  const auto c = GridFunction::sample(Square{0.0, 4.0}, 128, [](Complex) { return Complex(2.0, 0.0); });
  EXPECT_NEAR(mean_gap(c, Square{Complex(0.3, -0.2), 0.4}), 0.0, 1e-14);
  const auto x = real_part(Square{0.0, 4.0}, 128);
  for (const Complex center : {Complex(0.0, 0.0), Complex(0.37, -0.81), Complex(-1.0, 0.4)}) {
    EXPECT_LE(mean_gap(x, Square{center, 0.5}), 2.0 * x.spacing());
  }
}

TEST(MeanGap, LemmaConstant) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto f = GridFunction::sample(Square{0.0, 4.0}, 256, lacunary(kHalf, 6, 0.4, 0.9));
  CampanatoOptions options;
  const double k = campanato_seminorm(f, kHalf, options).value;
  double lo = kInfinity;
  double hi = -kInfinity;
  for (const auto& v : f.values()) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
  }
  const double h = f.spacing();
  int violations = 0;
  for (int t = 0; t < 100; ++t) {
    const double side = std::exp2(-1.0 - 4.0 * u(rng));
    const Complex center(-1.9 + side + (3.8 - 2.0 * side) * u(rng), -1.9 + side + (3.8 - 2.0 * side) * u(rng));
    const Square q{center, side};
    if (mean_gap(f, q) > 2.0 * kHalf.clamped(2.0 * side) * k + 4.0 * h * (hi - lo)) ++violations;
  }
  EXPECT_EQ(violations, 0);
}

TEST(SupNorm, DomainRestriction) {
  const auto f = GridFunction::sample(Square{0.0, 4.0}, 64, [](Complex z) { return z; });
  EXPECT_NEAR(sup_norm(f), std::abs(f.cell_center(0, 0)), 1e-14);
  EXPECT_LT(sup_norm(f, &kDisk), 1.0);
}
