#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

#include "beurling/moduli.hpp"

namespace beurling {

using Complex = std::complex<double>;

/// Axis-parallel square. Membership is half-open: [lo, hi) in each coordinate.
struct Square {
  Complex center;
  double side = 0.0;

  /// aQ: same center, side a·ℓ(Q).
  Square dilate(double a) const { return {center, a * side}; }
  double area() const { return side * side; }
  Complex lo() const { return center - Complex(0.5 * side, 0.5 * side); }
  Complex hi() const { return center + Complex(0.5 * side, 0.5 * side); }
  bool contains(Complex z) const;
  /// True when `other` lies inside this square (closed comparison).
  bool contains(const Square& other) const;
};

/// One term a·cos(kθ) + b·sin(kθ) of a radial profile.
struct Harmonic {
  int frequency = 0;
  double cos_coefficient = 0.0;
  double sin_coefficient = 0.0;
};

/// A disk centred at 0 or a star-shaped domain {ρe^{iθ} : ρ < r(θ)} with a
/// truncated trigonometric profile r(θ) = mean + Σ harmonics. Immutable.
class PlanarDomain {
 public:
  enum class Kind { disk, star };

  static PlanarDomain disk(double radius);
  static PlanarDomain star(double mean_radius, std::vector<Harmonic> harmonics);

  /// {"kind":"disk","radius":r}, {"kind":"star","amplitude":a,"depth":k,"modulus":{..}}
  /// or {"kind":"star","mean":1,"harmonics":[[k,a,b],...]}.
  static PlanarDomain from_json(const nlohmann::json& spec);

  Kind kind() const { return kind_; }
  double mean_radius() const { return mean_radius_; }
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }

  double radius_at(double theta) const;
  double radius_derivative(double theta) const;
  double radius_second_derivative(double theta) const;
  Complex boundary_point(double theta) const;

  /// z ∈ Ω (open).
  bool contains(Complex z) const;
  /// ρ(z) = dist(z, ∂Ω).
  double boundary_distance(Complex z) const;

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  Square bounding_box() const { return {Complex(0.0, 0.0), 2.0 * r_max_}; }
  double area() const;

 private:
  PlanarDomain(Kind kind, double mean_radius, std::vector<Harmonic> harmonics);

  Kind kind_;
  double mean_radius_;
  std::vector<Harmonic> harmonics_;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  std::vector<Complex> samples_;  // boundary points at uniform angles
};

/// Empirical sup of |n(s₁) − n(s₂)| / ω(|s₁ − s₂|) over a 2048-point arclength
/// sample of the outward unit normal; |s₁ − s₂| is the periodic arclength
/// distance and ω is frozen at its cap beyond T.
double normal_modulus_constant(const PlanarDomain& domain, const Modulus& m);

/// r(θ) = 1 + amplitude Σ_{k=1..depth} 2^{-k} ω(2^{-k}) cos(2^k θ).
PlanarDomain make_test_domain(const Modulus& m, double amplitude, int depth);

}  // namespace beurling
