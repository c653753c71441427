#include "beurling/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "beurling/error.hpp"
#include "beurling/quadrature.hpp"

namespace beurling {
namespace {

constexpr int kShellCount = 41;  // shells 0..40
constexpr double kDiniRelTol = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double interpolate(const std::vector<std::pair<double, double>>& knots, double t) {
  const auto upper = std::lower_bound(
      knots.begin(), knots.end(), t,
      [](const std::pair<double, double>& knot, double value) { return knot.first < value; });
  if (upper == knots.end()) return knots.back().second;
  if (upper->first == t || upper == knots.begin()) return upper->second;
  const auto lower = upper - 1;
  const double w = (t - lower->first) / (upper->first - lower->first);
  return lower->second + w * (upper->second - lower->second);
}

// Decides summability of the dyadic shell integrals S_0..S_40. Shells of a
// non-decreasing ω are non-increasing; they are summable when the decay is
// geometric with a stable ratio, or polynomial with exponent above 1.1.
bool shells_summable(const std::vector<double>& shells) {
  const double s20 = shells[20];
  const double s30 = shells[30];
  const double s40 = shells[40];
  if (s40 <= 0.0) return true;
  const double r1 = std::pow(s30 / s20, 0.1);
  const double r2 = std::pow(s40 / s30, 0.1);
  if (r2 < 1.0 - 1e-9 && std::abs(r2 - r1) <= 2e-3) return true;
  const double exponent = std::log2(s20 / s40);
  return exponent > 1.1;
}

}  // namespace

Modulus::Modulus(ModulusFamily family, double cap) : family_(std::move(family)), cap_(cap) {
  if (!(cap_ > 0.0) || !std::isfinite(cap_)) {
    throw ValidationError(fmt::format("modulus cap must be positive and finite, got {}", cap_));
  }
  if (const auto* tab = std::get_if<TabulatedFamily>(&family_)) {
    const auto& k = tab->knots;
    const double t0 = k[0].first, v0 = k[0].second;
    const double t1 = k[1].first, v1 = k[1].second;
    tail_exponent_ = (v0 > 0.0 && v1 > v0) ? std::log(v1 / v0) / std::log(t1 / t0) : 0.0;
  }
}

Modulus Modulus::power(double alpha, double cap) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ValidationError(fmt::format("power modulus needs alpha in (0,1), got {}", alpha));
  }
  return Modulus(PowerFamily{alpha}, cap);
}

Modulus Modulus::log(double beta, double cap) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ValidationError(fmt::format("log modulus needs beta > 0, got {}", beta));
  }
  if (!(cap < std::numbers::e)) {
    throw ValidationError(fmt::format("log modulus is only increasing below e, cap {} too large", cap));
  }
  return Modulus(LogFamily{beta}, cap);
}

Modulus Modulus::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw ValidationError("tabulated modulus needs at least two knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [t, v] = knots[i];
    if (!(t > 0.0) || !std::isfinite(t) || !(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(fmt::format("invalid knot ({}, {})", t, v));
    }
    if (i > 0 && !(t > knots[i - 1].first)) {
      throw ValidationError("tabulated knots must be strictly increasing in t");
    }
    if (i > 0 && v < knots[i - 1].second) {
      throw ValidationError("tabulated knot values must be non-decreasing");
    }
  }
  const double cap = knots.back().first;
  return Modulus(TabulatedFamily{std::move(knots)}, cap);
}

Modulus Modulus::from_json(const nlohmann::json& spec) {
  try {
    const std::string family = spec.at("family").get<std::string>();
    if (family == "power") {
      return power(spec.at("alpha").get<double>(), spec.value("cap", 1.0));
    }
    if (family == "log") {
      return log(spec.at("beta").get<double>(), spec.value("cap", 1.0));
    }
    if (family == "tabulated") {
      std::vector<std::pair<double, double>> knots;
      for (const auto& knot : spec.at("knots")) {
        if (!knot.is_array() || knot.size() != 2) throw ConfigError("knots must be [t, v] pairs");
        knots.emplace_back(knot[0].get<double>(), knot[1].get<double>());
      }
      return tabulated(std::move(knots));
    }
    throw ConfigError(fmt::format("unknown modulus family '{}'", family));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed modulus spec: {}", e.what()));
  }
}

nlohmann::json Modulus::to_json() const {
  return std::visit(
      overloaded{
          [&](const PowerFamily& p) {
            return nlohmann::json{{"family", "power"}, {"alpha", p.alpha}, {"cap", cap_}};
          },
          [&](const LogFamily& l) {
            return nlohmann::json{{"family", "log"}, {"beta", l.beta}, {"cap", cap_}};
          },
          [&](const TabulatedFamily& t) {
            nlohmann::json knots = nlohmann::json::array();
            for (const auto& [x, v] : t.knots) knots.push_back({x, v});
            return nlohmann::json{{"family", "tabulated"}, {"knots", knots}};
          }},
      family_);
}

double Modulus::operator()(double t) const {
  if (!(t > 0.0) || t > cap_ * (1.0 + 1e-12)) {
    throw DomainError(fmt::format("modulus evaluated at t = {} outside (0, {}]", t, cap_));
  }
  return std::visit(
      overloaded{
          [&](const PowerFamily& p) { return std::pow(t, p.alpha); },
          [&](const LogFamily& l) { return std::pow(1.0 - std::log(t), -1.0 - l.beta); },
          [&](const TabulatedFamily& tab) {
            const auto& [t0, v0] = tab.knots.front();
            if (t < t0) return v0 * std::pow(t / t0, tail_exponent_);
            return interpolate(tab.knots, t);
          }},
      family_);
}

double Modulus::clamped(double t) const { return (*this)(std::min(t, cap_)); }

double Modulus::at_log(double log_t) const {
  return std::visit(
      overloaded{
          [&](const PowerFamily& p) { return std::exp(p.alpha * log_t); },
          [&](const LogFamily& l) { return std::pow(1.0 - log_t, -1.0 - l.beta); },
          [&](const TabulatedFamily& tab) {
            const auto& [t0, v0] = tab.knots.front();
            const double log_t0 = std::log(t0);
            if (log_t < log_t0) return v0 * std::exp(tail_exponent_ * (log_t - log_t0));
            return interpolate(tab.knots, std::min(std::exp(log_t), cap_));
          }},
      family_);
}

double dini_integral(const Modulus& m, double upper) {
  if (!(upper > 0.0) || upper > m.cap() * (1.0 + 1e-12)) {
    throw DomainError(fmt::format("Dini integral upper limit {} outside (0, {}]", upper, m.cap()));
  }
  // t = upper * e^{-u} turns ω(t)/t dt into ω(upper e^{-u}) du on [0, ∞).
  const double log_upper = std::log(upper);
  const auto integrand = [&](double u) { return m.at_log(log_upper - u); };

  const double width = std::numbers::ln2;
  std::vector<double> shells(kShellCount);
  double partial = 0.0;
  for (int k = 0; k < kShellCount; ++k) {
    shells[k] = quadrature::integrate(integrand, k * width, (k + 1) * width, 1e-11, 1e-300).value;
    partial += shells[k];
  }
  if (!shells_summable(shells)) {
    if (upper >= m.cap()) return kInfinity;
    // Slow decay far below 1 can fool the shell test; summability is a property
    // at 0, so settle it at the cap and subtract the finite piece.
    const double full = dini_integral(m, m.cap());
    if (!std::isfinite(full)) return kInfinity;
    const auto piece = quadrature::integrate([&](double v) { return m.at_log(v); }, log_upper,
                                             std::log(m.cap()), 1e-12, 1e-300);
    return full - piece.value;
  }

  const auto tail = quadrature::integrate_to_infinity(integrand, kShellCount * width,
                                                      1e-10, 1e-3 * kDiniRelTol * partial);
  if (!tail.converged) return kInfinity;
  return partial + tail.value;
}

namespace {

// x ∫_x^T ω(t)/t² dt, integrated in v = log t.
double weak_term(const Modulus& m, double x, double upper, double rel_tol) {
  const auto integrand = [&](double v) { return m.at_log(v) * std::exp(-v); };
  const auto r = quadrature::integrate(integrand, std::log(x), std::log(upper), rel_tol, 1e-300);
  return x * r.value;
}

}  // namespace

RegularityReport check_regular(const Modulus& m, double epsilon, int depth) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ValidationError(fmt::format("epsilon must lie in (0,1), got {}", epsilon));
  }
  if (depth < 1) throw ValidationError("probe depth must be at least 1");
  RegularityReport report;
  report.epsilon = epsilon;

  const double cap = m.cap();
  std::vector<double> quotient(depth + 1);
  std::vector<double> omega(depth + 1);
  for (int j = 0; j <= depth; ++j) {
    const double t = std::ldexp(cap, -j);
    omega[j] = m(t);
    quotient[j] = omega[j] / std::pow(t, epsilon);
  }
  double almost = 1.0;
  for (int j = 0; j <= depth; ++j) {
    for (int k = j + 1; k <= depth; ++k) {
      if (quotient[k] > 0.0) {
        almost = std::max(almost, quotient[j] / quotient[k]);
      } else if (quotient[j] > 0.0) {
        almost = kInfinity;
      }
    }
  }
  report.almost_dec_constant = almost;

  double weak = 0.0;
  for (int j = 0; j <= depth; ++j) {
    if (omega[j] <= 0.0) continue;
    const double x = std::ldexp(cap, -j);
    weak = std::max(weak, weak_term(m, x, cap, 1e-6) / omega[j]);
  }
  report.weak_constant = weak;
  report.dini_value = dini_integral(m, cap);
  report.is_regular = std::isfinite(report.dini_value) && std::isfinite(report.almost_dec_constant);
  return report;
}

Modulus conjugate(const Modulus& m) {
  if (m.cap() < 1.0) {
    throw PreconditionError("conjugate modulus integrates up to 1 and needs cap >= 1");
  }
  if (!std::isfinite(dini_integral(m, m.cap()))) {
    throw PreconditionError("conjugate modulus requires a Dini-smooth modulus");
  }
  constexpr int kDepth = 30;
  std::vector<std::pair<double, double>> knots;
  knots.reserve(kDepth + 1);
  for (int j = kDepth; j >= 0; --j) {
    const double x = std::ldexp(1.0, -j);
    const double value = dini_integral(m, x) + weak_term(m, x, 1.0, 1e-10);
    knots.emplace_back(x, value);
  }
  // Guard the non-decreasing invariant against quadrature noise in the last digits.
  for (std::size_t i = 1; i < knots.size(); ++i) {
    knots[i].second = std::max(knots[i].second, knots[i - 1].second);
  }
  return Modulus::tabulated(std::move(knots));
}

}  // namespace beurling
