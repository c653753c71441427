#include "beurling/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "beurling/error.hpp"

namespace beurling {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinSamples = 4096;
constexpr int kNormalSamples = 2048;
constexpr int kNewtonSteps = 20;

int max_frequency(const std::vector<Harmonic>& harmonics) {
  int k = 0;
  for (const auto& h : harmonics) k = std::max(k, h.frequency);
  return k;
}

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTwoPi);
  return theta < 0.0 ? theta + kTwoPi : theta;
}

}  // namespace

bool Square::contains(Complex z) const {
  const Complex a = lo();
  const Complex b = hi();
  return z.real() >= a.real() && z.real() < b.real() && z.imag() >= a.imag() && z.imag() < b.imag();
}

bool Square::contains(const Square& other) const {
  const double tol = 1e-12 * std::max(side, other.side);
  const Complex a = lo(), b = hi(), c = other.lo(), d = other.hi();
  return c.real() >= a.real() - tol && c.imag() >= a.imag() - tol && d.real() <= b.real() + tol &&
         d.imag() <= b.imag() + tol;
}

PlanarDomain::PlanarDomain(Kind kind, double mean_radius, std::vector<Harmonic> harmonics)
    : kind_(kind), mean_radius_(mean_radius), harmonics_(std::move(harmonics)) {
  if (!(mean_radius_ > 0.0) || !std::isfinite(mean_radius_)) {
    throw ValidationError(fmt::format("domain radius must be positive, got {}", mean_radius_));
  }
  if (kind_ == Kind::disk) {
    r_min_ = r_max_ = mean_radius_;
    return;
  }
  for (const auto& h : harmonics_) {
    if (h.frequency < 1) throw ValidationError("star harmonics need frequency >= 1");
    if (!std::isfinite(h.cos_coefficient) || !std::isfinite(h.sin_coefficient)) {
      throw ValidationError("star harmonic coefficients must be finite");
    }
  }
  const int count = std::max(kMinSamples, 16 * max_frequency(harmonics_));
  const double step = kTwoPi / count;
  samples_.reserve(count);
  r_min_ = kInfinity;
  double sampled_max = 0.0;
  for (int i = 0; i < count; ++i) {
    const double theta = i * step;
    const double r = radius_at(theta);
    r_min_ = std::min(r_min_, r);
    sampled_max = std::max(sampled_max, r);
    samples_.push_back(std::polar(r, theta));
  }
  if (!(r_min_ > 0.0)) {
    throw AmplitudeError(fmt::format("star profile reaches r_min = {} <= 0", r_min_));
  }
  // Between samples r can exceed the sampled max by at most max|r''| step²/8.
  double curvature_bound = 0.0;
  for (const auto& h : harmonics_) {
    curvature_bound += double(h.frequency) * h.frequency *
                       (std::abs(h.cos_coefficient) + std::abs(h.sin_coefficient));
  }
  r_max_ = sampled_max + curvature_bound * step * step / 8.0;
}

PlanarDomain PlanarDomain::disk(double radius) { return PlanarDomain(Kind::disk, radius, {}); }

PlanarDomain PlanarDomain::star(double mean_radius, std::vector<Harmonic> harmonics) {
  return PlanarDomain(Kind::star, mean_radius, std::move(harmonics));
}

PlanarDomain PlanarDomain::from_json(const nlohmann::json& spec) {
  try {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "disk") return disk(spec.value("radius", 1.0));
    if (kind != "star") throw ConfigError(fmt::format("unknown domain kind '{}'", kind));
    if (spec.contains("harmonics")) {
      std::vector<Harmonic> harmonics;
      for (const auto& h : spec.at("harmonics")) {
        if (!h.is_array() || h.size() != 3) throw ConfigError("harmonics must be [k, a, b] triples");
        harmonics.push_back({h[0].get<int>(), h[1].get<double>(), h[2].get<double>()});
      }
      return star(spec.value("mean", 1.0), std::move(harmonics));
    }
    return make_test_domain(Modulus::from_json(spec.at("modulus")),
                            spec.at("amplitude").get<double>(), spec.at("depth").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed domain spec: {}", e.what()));
  }
}

double PlanarDomain::radius_at(double theta) const {
  double r = mean_radius_;
  for (const auto& h : harmonics_) {
    const double k = h.frequency * theta;
    r += h.cos_coefficient * std::cos(k) + h.sin_coefficient * std::sin(k);
  }
  return r;
}

double PlanarDomain::radius_derivative(double theta) const {
  double d = 0.0;
  for (const auto& h : harmonics_) {
    const double k = h.frequency * theta;
    d += h.frequency * (h.sin_coefficient * std::cos(k) - h.cos_coefficient * std::sin(k));
  }
  return d;
}

double PlanarDomain::radius_second_derivative(double theta) const {
  double d = 0.0;
  for (const auto& h : harmonics_) {
    const double k = h.frequency * theta;
    const double f2 = double(h.frequency) * h.frequency;
    d -= f2 * (h.cos_coefficient * std::cos(k) + h.sin_coefficient * std::sin(k));
  }
  return d;
}

Complex PlanarDomain::boundary_point(double theta) const {
  return std::polar(radius_at(theta), theta);
}

bool PlanarDomain::contains(Complex z) const {
  const double modulus = std::abs(z);
  if (kind_ == Kind::disk) return modulus < mean_radius_;
  if (modulus < r_min_) return true;
  if (modulus >= r_max_) return false;
  return modulus < radius_at(std::arg(z));
}

double PlanarDomain::boundary_distance(Complex z) const {
  const double modulus = std::abs(z);
  if (kind_ == Kind::disk) return std::abs(mean_radius_ - modulus);

  const int count = static_cast<int>(samples_.size());
  const double step = kTwoPi / count;

  // The nearest boundary point lies within distance d0 of z, which confines its
  // angle to a cone around arg z unless z is close to the origin.
  const double theta_z = wrap_angle(std::arg(z));
  const double d0 = std::abs(z - boundary_point(theta_z));
  int first = 0;
  int last = count - 1;
  if (modulus > d0) {
    const double half_width = std::asin(std::min(1.0, d0 / modulus));
    first = static_cast<int>(std::floor((theta_z - half_width) / step)) - 1;
    last = static_cast<int>(std::ceil((theta_z + half_width) / step)) + 1;
    if (last - first >= count) {
      first = 0;
      last = count - 1;
    }
  }
  const auto index = [count](int i) { return ((i % count) + count) % count; };
  const auto sample_distance2 = [&](int i) { return std::norm(samples_[index(i)] - z); };

  // Refine the three best local minima of the sampled squared distance.
  std::vector<std::pair<double, int>> minima;
  for (int i = first; i <= last; ++i) {
    const double d = sample_distance2(i);
    if (d <= sample_distance2(i - 1) && d <= sample_distance2(i + 1)) minima.emplace_back(d, i);
  }
  if (minima.empty()) {
    int best = first;
    for (int i = first; i <= last; ++i) {
      if (sample_distance2(i) < sample_distance2(best)) best = i;
    }
    minima.emplace_back(sample_distance2(best), best);
  }
  std::sort(minima.begin(), minima.end());
  if (minima.size() > 3) minima.resize(3);

  double best = minima.front().first;
  for (const auto& [d_sample, i] : minima) {
    double lo = (i - 1) * step;
    double hi = (i + 1) * step;
    double theta = i * step;
    for (int iter = 0; iter < kNewtonSteps; ++iter) {
      const double r = radius_at(theta);
      const double r1 = radius_derivative(theta);
      const double r2 = radius_second_derivative(theta);
      const Complex e = std::polar(1.0, theta);
      const Complex gamma = r * e;
      const Complex d1 = Complex(r1, r) * e;
      const Complex d2 = Complex(r2 - r, 2.0 * r1) * e;
      const Complex diff = gamma - z;
      const double g1 = 2.0 * std::real(std::conj(diff) * d1);
      const double g2 = 2.0 * (std::norm(d1) + std::real(std::conj(diff) * d2));
      if (g1 > 0.0) {
        hi = theta;
      } else {
        lo = theta;
      }
      double next = (g2 > 0.0) ? theta - g1 / g2 : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - theta) < 1e-15) break;
      theta = next;
    }
    best = std::min({best, d_sample, std::norm(boundary_point(theta) - z)});
  }
  return std::sqrt(best);
}

double PlanarDomain::area() const {
  if (kind_ == Kind::disk) return std::numbers::pi * mean_radius_ * mean_radius_;
  // Trapezoid is exact for r² as long as the sample count exceeds 4·max frequency.
  const int count = std::max(kMinSamples, 8 * max_frequency(harmonics_));
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double r = radius_at(kTwoPi * i / count);
    sum += r * r;
  }
  return 0.5 * sum * kTwoPi / count;
}

double normal_modulus_constant(const PlanarDomain& domain, const Modulus& m) {
  const int fine = std::max(1 << 15, 64 * max_frequency(domain.harmonics()));
  const double step = kTwoPi / fine;
  const auto speed = [&](double theta) {
    const double r = domain.radius_at(theta);
    const double r1 = domain.radius_derivative(theta);
    return std::hypot(r, r1);
  };

  std::vector<double> cumulative(fine + 1, 0.0);
  double previous = speed(0.0);
  for (int i = 1; i <= fine; ++i) {
    const double current = speed(i * step);
    if (!(current > 1e-12)) throw GeometryError("degenerate boundary tangent (zero speed)");
    cumulative[i] = cumulative[i - 1] + 0.5 * step * (previous + current);
    previous = current;
  }
  const double length = cumulative.back();

  std::vector<Complex> normals(kNormalSamples);
  for (int i = 0; i < kNormalSamples; ++i) {
    const double target = length * i / kNormalSamples;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    const int k = std::clamp(static_cast<int>(it - cumulative.begin()) - 1, 0, fine - 1);
    const double w = (target - cumulative[k]) / (cumulative[k + 1] - cumulative[k]);
    const double theta = (k + w) * step;
    const double r = domain.radius_at(theta);
    const double r1 = domain.radius_derivative(theta);
    const Complex tangent = Complex(r1, r) * std::polar(1.0, theta);
    const double norm = std::abs(tangent);
    if (!(norm > 1e-12)) throw GeometryError("degenerate boundary tangent (zero speed)");
    normals[i] = Complex(0.0, -1.0) * tangent / norm;
  }

  const int half = kNormalSamples / 2;
  std::vector<double> omega(half + 1, 0.0);
  for (int k = 1; k <= half; ++k) omega[k] = m.clamped(length * k / kNormalSamples);

  double constant = 0.0;
  for (int i = 0; i < kNormalSamples; ++i) {
    for (int j = i + 1; j < kNormalSamples; ++j) {
      const int gap = std::min(j - i, kNormalSamples - (j - i));
      constant = std::max(constant, std::abs(normals[i] - normals[j]) / omega[gap]);
    }
  }
  return constant;
}

PlanarDomain make_test_domain(const Modulus& m, double amplitude, int depth) {
  if (depth < 1 || depth > 20) throw ValidationError(fmt::format("depth {} outside [1, 20]", depth));
  if (!std::isfinite(amplitude)) throw ValidationError("amplitude must be finite");
  std::vector<Harmonic> harmonics;
  if (amplitude != 0.0) {
    for (int k = 1; k <= depth; ++k) {
      const double scale = std::ldexp(1.0, -k);
      harmonics.push_back({1 << k, amplitude * scale * m.clamped(scale), 0.0});
    }
  }
  return PlanarDomain::star(1.0, std::move(harmonics));
}

}  // namespace beurling
