#pragma once

#include <functional>

namespace beurling::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// 16-point Gauss-Legendre rule on [a, b].
double gauss_legendre16(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive bisection driven by the difference between the 16-point
/// rule on an interval and on its two halves. Stops when the summed error
/// estimate drops below max(rel_tol * |value|, abs_tol) or after max_intervals.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol = 0.0, int max_intervals = 4000);

/// ∫_a^∞ f(u) du through u = a + (1 - s) / s, s ∈ (0, 1].
Result integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol, double abs_tol = 0.0,
                             int max_intervals = 4000);

}  // namespace beurling::quadrature
