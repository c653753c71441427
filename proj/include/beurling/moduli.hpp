#pragma once

#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace beurling {

/// ω(t) = t^α, 0 < α < 1.
struct PowerFamily {
  double alpha;
};

/// ω(t) = (log(e/t))^{-1-β}, β > 0.
struct LogFamily {
  double beta;
};

/// Piecewise-linear through (t, v) knots; below the smallest knot the power
/// law through the two smallest knots is used.
struct TabulatedFamily {
  std::vector<std::pair<double, double>> knots;
};

using ModulusFamily = std::variant<PowerFamily, LogFamily, TabulatedFamily>;

/// A modulus of continuity restricted to (0, T]. Immutable.
class Modulus {
 public:
  static Modulus power(double alpha, double cap = 1.0);
  static Modulus log(double beta, double cap = 1.0);
  static Modulus tabulated(std::vector<std::pair<double, double>> knots);

  /// Parses {"family":"power","alpha":..}, {"family":"log","beta":..} or
  /// {"family":"tabulated","knots":[[t,v],...]}; optional "cap" for the first two.
  static Modulus from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;

  /// ω(t) for t in (0, T]; throws DomainError otherwise.
  double operator()(double t) const;

  /// ω(min(t, T)) for t > 0: the modulus frozen at its cap beyond T. Used where
  /// square sides or distances can exceed the evaluation domain.
  double clamped(double t) const;

  /// ω(e^{log_t}); stays accurate when e^{log_t} underflows.
  double at_log(double log_t) const;

  double cap() const { return cap_; }
  const ModulusFamily& family() const { return family_; }

 private:
  Modulus(ModulusFamily family, double cap);

  ModulusFamily family_;
  double cap_;
  // Tabulated extrapolation: ω(t) = v0 * (t / t0)^exponent below t0.
  double tail_exponent_ = 0.0;
};

struct RegularityReport {
  double dini_value = 0.0;  // +inf when divergent
  double epsilon = 0.0;
  double almost_dec_constant = 1.0;
  double weak_constant = 0.0;
  bool is_regular = false;
};

/// ∫_0^upper ω(t)/t dt, or +inf when the dyadic shell integrals do not decay
/// summably by shell 40.
double dini_integral(const Modulus& m, double upper);

/// Empirical constants of the almost-decreasing property of ω(t)/t^ε and of
/// x∫_x^T ω(t)/t² dt ≤ C ω(x), on the probe grid t = T 2^{-j}, j = 0..depth.
RegularityReport check_regular(const Modulus& m, double epsilon, int depth = 30);

/// ω̃(x) = ∫_0^x ω(t)/t dt + x∫_x^1 ω(t)/t² dt, tabulated at x = 2^{-j}, j = 0..30.
Modulus conjugate(const Modulus& m);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace beurling
