#include "beurling/extension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "beurling/error.hpp"
#include "beurling/transform.hpp"

namespace beurling {
namespace {

constexpr double kCollarFactor = 1.25;

// Bilinear interpolation on cell centres, restricted to the cells of Ω and
// renormalised, so values stay convex combinations of f on Ω.
class MaskedInterpolator {
 public:
  MaskedInterpolator(const GridFunction& f, const PlanarDomain& domain)
      : f_(f), inside_(membership(domain, f)) {}

  Complex operator()(Complex w) const {
    const double h = f_.spacing();
    const Complex lo = f_.box().lo();
    double u = (w.real() - lo.real()) / h - 0.5;
    double v = (w.imag() - lo.imag()) / h - 0.5;
    const auto snap = [](double x) {
      const double r = std::round(x);
      return std::abs(x - r) < 1e-9 ? r : x;
    };
    u = snap(u);
    v = snap(v);
    const int j0 = static_cast<int>(std::floor(u));
    const int i0 = static_cast<int>(std::floor(v));
    const double fu = u - j0;
    const double fv = v - i0;

    Complex sum = 0.0;
    double weight = 0.0;
    const auto add = [&](int i, int j, double wgt) {
      if (wgt <= 0.0 || !valid(i, j)) return;
      sum += wgt * f_(i, j);
      weight += wgt;
    };
    add(i0, j0, (1.0 - fu) * (1.0 - fv));
    add(i0, j0 + 1, fu * (1.0 - fv));
    add(i0 + 1, j0, (1.0 - fu) * fv);
    add(i0 + 1, j0 + 1, fu * fv);
    if (weight > 0.0) return sum / weight;
    return nearest(i0, j0, w);
  }

  Complex nearest_to(Complex w) const {
    const double h = f_.spacing();
    const Complex lo = f_.box().lo();
    const int j = static_cast<int>(std::floor((w.real() - lo.real()) / h));
    const int i = static_cast<int>(std::floor((w.imag() - lo.imag()) / h));
    return nearest(i, j, w);
  }

 private:
  bool valid(int i, int j) const {
    return i >= 0 && j >= 0 && i < f_.n() && j < f_.n() && inside_[f_.index(i, j)];
  }

  Complex nearest(int i0, int j0, Complex w) const {
    for (int radius = 0; radius < f_.n(); ++radius) {
      double best = kInfinity;
      Complex value = 0.0;
      for (int i = i0 - radius; i <= i0 + radius; ++i) {
        for (int j = j0 - radius; j <= j0 + radius; ++j) {
          if (!valid(i, j)) continue;
          const double d = std::norm(f_.cell_center(i, j) - w);
          if (d < best) {
            best = d;
            value = f_(i, j);
          }
        }
      }
      if (best < kInfinity) return value;
    }
    throw ResolutionError("domain contains no grid cells to extend from");
  }

  const GridFunction& f_;
  std::vector<bool> inside_;
};

// max over collar pairs of the forward and backward distortion of `map`.
double collar_bilipschitz(const PlanarDomain& domain, const std::function<Complex(Complex)>& map) {
  constexpr int kAngles = 256;
  constexpr int kRadii = 8;
  std::vector<Complex> points;
  points.reserve(kAngles * kRadii);
  for (int a = 0; a < kAngles; ++a) {
    const double theta = 2.0 * std::numbers::pi * (a + 0.5) / kAngles;
    const double r = domain.radius_at(theta);
    for (int k = 0; k < kRadii; ++k) {
      const double rho = r * (1.0 + (kCollarFactor - 1.0) * (k + 0.5) / kRadii);
      points.push_back(std::polar(rho, theta));
    }
  }
  std::vector<Complex> images(points.size());
  std::transform(points.begin(), points.end(), images.begin(), map);
  double constant = 1.0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const double d = std::abs(points[a] - points[b]);
      const double e = std::abs(images[a] - images[b]);
      if (d == 0.0 || e == 0.0) continue;
      constant = std::max({constant, e / d, d / e});
    }
  }
  return constant;
}

}  // namespace

ExtensionResult disk_reflect_extend(const GridFunction& f, const Square& target_box, int n) {
  const PlanarDomain disk = PlanarDomain::disk(1.0);
  if (!target_box.contains(disk.bounding_box())) {
    throw PreconditionError("target box too small: it must contain the closed unit disk");
  }
  if (!f.box().contains(disk.bounding_box())) {
    throw PreconditionError("f's grid must cover the unit disk");
  }
  const MaskedInterpolator interpolate(f, disk);
  const double innermost = 0.5 * f.spacing();
  const Complex center_value = interpolate.nearest_to(Complex(0.0, 0.0));

  const auto reflect = [](Complex z) { return z / std::norm(z); };
  auto extended = GridFunction::sample(target_box, n > 0 ? n : f.n(), [&](Complex z) {
    if (std::abs(z) < 1.0) return interpolate(z);
    const Complex w = reflect(z);
    if (std::abs(w) < innermost) return center_value;
    return interpolate(w);
  });
  return {std::move(extended), collar_bilipschitz(disk, reflect)};
}

ExtensionResult collar_reflect_extend(const PlanarDomain& domain, const GridFunction& f,
                                      const Square& target_box, int n) {
  if (!target_box.contains(domain.bounding_box())) {
    throw PreconditionError("target box too small: it must contain the domain's bounding box");
  }
  if (!f.box().contains(domain.bounding_box())) {
    throw PreconditionError("f's grid must cover the domain");
  }
  const MaskedInterpolator interpolate(f, domain);
  const auto reflect = [&](Complex z) {
    const double theta = std::arg(z);
    const double r = domain.radius_at(theta);
    const double rho = std::min(std::abs(z), kCollarFactor * r);
    return std::polar(r * r / rho, theta);
  };
  auto extended = GridFunction::sample(target_box, n > 0 ? n : f.n(), [&](Complex z) {
    if (domain.contains(z)) return interpolate(z);
    return interpolate(reflect(z));
  });
  return {std::move(extended), collar_bilipschitz(domain, reflect)};
}

}  // namespace beurling
