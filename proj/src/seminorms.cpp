#include "beurling/seminorms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "beurling/error.hpp"
#include "beurling/transform.hpp"

namespace beurling {
namespace {

constexpr std::size_t kAllPairsLimit = 2000;
constexpr std::size_t kPairBudget = 1'000'000;

// Prefix sums over the cells selected by `inside`, for O(1) block means.
class BlockSums {
 public:
  BlockSums(const GridFunction& f, const std::vector<bool>& inside)
      : stride_(f.n() + 1),
        sum_(static_cast<std::size_t>(stride_) * stride_),
        count_(static_cast<std::size_t>(stride_) * stride_) {
    for (int i = 0; i < f.n(); ++i) {
      for (int j = 0; j < f.n(); ++j) {
        const bool in = inside[f.index(i, j)];
        at(sum_, i + 1, j + 1) = at(sum_, i, j + 1) + at(sum_, i + 1, j) - at(sum_, i, j) +
                                 (in ? f(i, j) : Complex(0.0, 0.0));
        at(count_, i + 1, j + 1) =
            at(count_, i, j + 1) + at(count_, i + 1, j) - at(count_, i, j) + (in ? 1 : 0);
      }
    }
  }

  Complex sum(const GridFunction::Block& b) const { return query(sum_, b); }
  long count(const GridFunction::Block& b) const { return query(count_, b); }

 private:
  template <class T>
  T& at(std::vector<T>& v, int i, int j) {
    return v[static_cast<std::size_t>(i) * stride_ + j];
  }
  template <class T>
  T query(const std::vector<T>& v, const GridFunction::Block& b) const {
    const auto get = [&](int i, int j) { return v[static_cast<std::size_t>(i) * stride_ + j]; };
    return get(b.row_end, b.col_end) - get(b.row_begin, b.col_end) - get(b.row_end, b.col_begin) +
           get(b.row_begin, b.col_begin);
  }

  int stride_;
  std::vector<Complex> sum_;
  std::vector<long> count_;
};

Complex median_center(std::vector<Complex>& samples) {
  const bool real = std::all_of(samples.begin(), samples.end(), [](Complex v) { return v.imag() == 0.0; });
  if (real) {
    std::vector<double> xs(samples.size());
    std::transform(samples.begin(), samples.end(), xs.begin(), [](Complex v) { return v.real(); });
    auto mid = xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2);
    std::nth_element(xs.begin(), mid, xs.end());
    return *mid;
  }
  // Geometric median by Weiszfeld iteration from the mean.
  Complex x = 0.0;
  for (Complex v : samples) x += v;
  x /= static_cast<double>(samples.size());
  for (int iter = 0; iter < 100; ++iter) {
    Complex numerator = 0.0;
    double denominator = 0.0;
    for (Complex v : samples) {
      const double d = std::abs(v - x);
      if (d < 1e-300) continue;
      numerator += v / d;
      denominator += 1.0 / d;
    }
    if (denominator == 0.0) break;
    const Complex next = numerator / denominator;
    if (std::abs(next - x) < 1e-15 * (1.0 + std::abs(x))) break;
    x = next;
  }
  return x;
}

SeminormEstimate sweep(const GridFunction& f, const Modulus& m, const std::vector<bool>& inside,
                       const CampanatoOptions& options) {
  if (options.p != 1 && options.p != 2) throw ValidationError("Campanato exponent p must be 1 or 2");
  if (options.depth < 0) throw ValidationError("sweep depth must be non-negative");
  if (options.shifts < 1) throw ValidationError("shifts must be at least 1");
  const int n = f.n();
  if ((n >> options.depth) < 4) {
    throw ResolutionError(fmt::format(
        "grid n = {} too coarse for depth {}: the smallest square needs at least 16 cells", n,
        options.depth));
  }

  const BlockSums sums(f, inside);
  const Square& box = f.box();
  SeminormEstimate estimate;
  estimate.argmax_square = box;
  std::vector<Complex> scratch;

  for (int j = 0; j <= options.depth; ++j) {
    const double side = std::ldexp(box.side, -j);
    const double step = side / options.shifts;
    const int positions = options.shifts * ((1 << j) - 1) + 1;
    const double omega = m.clamped(side);
    ScaleSup scale{side, 0.0, box.center};
    for (int a = 0; a < positions; ++a) {
      for (int b = 0; b < positions; ++b) {
        const Complex lo = box.lo() + Complex(b * step, a * step);
        const Square q{lo + Complex(0.5 * side, 0.5 * side), side};
        const auto block = f.cells_in(q);
        const long cells = block.count();
        const long in_cells = sums.count(block);
        if (cells == 0 || in_cells == 0) continue;

        Complex center = sums.sum(block) / static_cast<double>(in_cells);
        if (options.center == CenterChoice::best_constant && options.p == 1) {
          scratch.clear();
          for (int r = block.row_begin; r < block.row_end; ++r) {
            for (int c = block.col_begin; c < block.col_end; ++c) {
              if (inside[f.index(r, c)]) scratch.push_back(f(r, c));
            }
          }
          center = median_center(scratch);
        }
        double deviation = 0.0;
        for (int r = block.row_begin; r < block.row_end; ++r) {
          for (int c = block.col_begin; c < block.col_end; ++c) {
            if (!inside[f.index(r, c)]) continue;
            const double d = std::abs(f(r, c) - center);
            deviation += options.p == 1 ? d : d * d;
          }
        }
        double value = deviation / static_cast<double>(cells);
        if (options.p == 2) value = std::sqrt(value);
        value /= omega;
        if (value > scale.sup) {
          scale.sup = value;
          scale.where = q.center;
        }
        if (value > estimate.value) {
          estimate.value = value;
          estimate.argmax_square = q;
        }
      }
    }
    estimate.per_scale.push_back(scale);
  }
  return estimate;
}

void require_inside_box(const GridFunction& f, const Square& q) {
  if (!f.box().contains(q)) {
    throw PreconditionError(fmt::format("square (centre {}+{}i, side {}) leaves the grid box",
                                        q.center.real(), q.center.imag(), q.side));
  }
}

double band_scale(double d) { return std::exp2(std::floor(std::log2(d))); }

}  // namespace

void write_csv(std::ostream& out, const SeminormEstimate& estimate) {
  out << "scale,sup_at_scale,argmax_cx,argmax_cy\n";
  for (const auto& s : estimate.per_scale) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.scale, s.sup, s.where.real(),
                       s.where.imag());
  }
}

Complex square_mean(const GridFunction& f, const Square& q) {
  require_inside_box(f, q);
  const auto block = f.cells_in(q);
  if (block.count() == 0) throw ResolutionError("square contains no cell centres");
  Complex sum = 0.0;
  for (int r = block.row_begin; r < block.row_end; ++r) {
    for (int c = block.col_begin; c < block.col_end; ++c) sum += f(r, c);
  }
  return sum / static_cast<double>(block.count());
}

Complex domain_mean(const GridFunction& f, const Square& q, const PlanarDomain& domain) {
  require_inside_box(f, q);
  const auto block = f.cells_in(q);
  Complex sum = 0.0;
  long count = 0;
  for (int r = block.row_begin; r < block.row_end; ++r) {
    for (int c = block.col_begin; c < block.col_end; ++c) {
      if (!domain.contains(f.cell_center(r, c))) continue;
      sum += f(r, c);
      ++count;
    }
  }
  if (count == 0) throw ResolutionError("Q ∩ Ω contains no cell centres");
  return sum / static_cast<double>(count);
}

SeminormEstimate campanato_seminorm(const GridFunction& f, const Modulus& m,
                                    const CampanatoOptions& options) {
  const std::vector<bool> everywhere(static_cast<std::size_t>(f.n()) * f.n(), true);
  return sweep(f, m, everywhere, options);
}

SeminormEstimate campanato_seminorm(const GridFunction& f, const Modulus& m,
                                    const PlanarDomain& domain, const CampanatoOptions& options) {
  return sweep(f, m, membership(domain, f), options);
}

SeminormEstimate lipschitz_seminorm(std::span<const Complex> points, std::span<const Complex> values,
                                    const Modulus& m, std::uint64_t seed) {
  if (points.size() != values.size()) throw ValidationError("points and values differ in length");
  if (points.size() < 2) throw DomainError("Lipschitz estimate needs at least two sample points");

  SeminormEstimate estimate;
  std::map<int, ScaleSup> bands;
  bool any_pair = false;
  const auto visit = [&](std::size_t a, std::size_t b) {
    const double d = std::abs(points[a] - points[b]);
    if (d == 0.0) return;
    if (d > m.cap() * (1.0 + 1e-12)) {
      throw DomainError(fmt::format("pair distance {} exceeds the modulus cap {}", d, m.cap()));
    }
    any_pair = true;
    const double value = std::abs(values[a] - values[b]) / m(d);
    const Complex mid = 0.5 * (points[a] + points[b]);
    const int band = static_cast<int>(std::floor(std::log2(d)));
    auto [it, fresh] = bands.try_emplace(band, ScaleSup{band_scale(d), value, mid});
    if (!fresh && value > it->second.sup) it->second = ScaleSup{it->second.scale, value, mid};
    if (!estimate.argmax_pair || value > estimate.value) {
      estimate.value = value;
      estimate.argmax_pair = std::make_pair(points[a], points[b]);
      estimate.argmax_square = Square{mid, d};
    }
  };

  const std::size_t count = points.size();
  if (count <= kAllPairsLimit) {
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) visit(a, b);
    }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    for (std::size_t k = 0; k < kPairBudget; ++k) {
      const std::size_t a = pick(rng);
      const std::size_t b = pick(rng);
      if (a != b) visit(a, b);
    }
  }
  if (!any_pair) throw DomainError("all sample points coincide");
  for (const auto& [band, sup] : bands) estimate.per_scale.push_back(sup);
  return estimate;
}

SeminormEstimate bloch_seminorm(const GridFunction& f, const PlanarDomain& domain, const Modulus& m,
                                Collar collar, Side side) {
  const double h = f.spacing();
  if (!(collar.rho_min >= 4.0 * h * (1.0 - 1e-12))) {
    throw PreconditionError(
        fmt::format("collar rho_min = {} below 4h = {}: the gradient stencil must stay on one side of the boundary",
                    collar.rho_min, 4.0 * h));
  }
  if (!(collar.rho_max > collar.rho_min)) throw ValidationError("collar needs rho_max > rho_min");

  SeminormEstimate estimate;
  std::map<int, ScaleSup> bands;
  bool any_cell = false;
  const int n = f.n();
  for (int i = 1; i + 1 < n; ++i) {
    for (int j = 1; j + 1 < n; ++j) {
      const Complex z = f.cell_center(i, j);
      const double modulus = std::abs(z);
      if (side == Side::interior && modulus < domain.r_min() - collar.rho_max) continue;
      if (side == Side::exterior && modulus > domain.r_max() + collar.rho_max) continue;
      if (domain.contains(z) != (side == Side::interior)) continue;
      const double rho = domain.boundary_distance(z);
      if (rho < collar.rho_min || rho > collar.rho_max) continue;
      any_cell = true;

      const Complex fx = (f(i, j + 1) - f(i, j - 1)) / (2.0 * h);
      const Complex fy = (f(i + 1, j) - f(i - 1, j)) / (2.0 * h);
      const Complex dz = 0.5 * (fx - Complex(0.0, 1.0) * fy);
      const Complex dzbar = 0.5 * (fx + Complex(0.0, 1.0) * fy);
      const double gradient = std::sqrt(std::norm(dz) + std::norm(dzbar));
      const double value = gradient * rho / m.clamped(rho);

      const int band = static_cast<int>(std::floor(std::log2(rho)));
      auto [it, fresh] = bands.try_emplace(band, ScaleSup{band_scale(rho), value, z});
      if (!fresh && value > it->second.sup) it->second = ScaleSup{it->second.scale, value, z};
      if (value > estimate.value) {
        estimate.value = value;
        estimate.argmax_square = Square{z, h};
      }
    }
  }
  if (!any_cell) throw ResolutionError("collar contains no grid cells");
  for (const auto& [band, sup] : bands) estimate.per_scale.push_back(sup);
  return estimate;
}

double mean_gap(const GridFunction& f, const Square& q) {
  require_inside_box(f, q.dilate(2.0));
  return std::abs(square_mean(f, q) - square_mean(f, q.dilate(2.0)));
}

double sup_norm(const GridFunction& f, const PlanarDomain* domain) {
  double sup = 0.0;
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) {
      if (domain != nullptr && !domain->contains(f.cell_center(i, j))) continue;
      sup = std::max(sup, std::abs(f(i, j)));
    }
  }
  return sup;
}

}  // namespace beurling
