#include "beurling/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace beurling::quadrature {
namespace {

struct Rule {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

// Roots of P_16 by Newton iteration from the Chebyshev-like initial guesses.
Rule make_rule() {
  Rule rule;
  constexpr int n = 16;
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

struct Interval {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Interval& other) const { return error < other.error; }
};

Interval evaluate(const std::function<double(double)>& f, double a, double b) {
  const double m = 0.5 * (a + b);
  const double whole = gauss_legendre16(f, a, b);
  const double halves = gauss_legendre16(f, a, m) + gauss_legendre16(f, m, b);
  return {a, b, halves, std::abs(halves - whole)};
}

}  // namespace

double gauss_legendre16(const std::function<double(double)>& f, double a, double b) {
  const auto& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * sum;
}

Result integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_tol, int max_intervals) {
  Result result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Interval> heap;
  heap.push(evaluate(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  int evaluations = 48;
  while (error > std::max(rel_tol * std::abs(value), abs_tol) &&
         static_cast<int>(heap.size()) < max_intervals) {
    const Interval worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Interval cannot be split further in floating point.
      heap.push({worst.a, worst.b, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    const Interval left = evaluate(f, worst.a, m);
    const Interval right = evaluate(f, m, worst.b);
    evaluations += 96;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed accumulated cancellation error in the running totals.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  result.value = value;
  result.error = error;
  result.evaluations = evaluations;
  result.converged = std::isfinite(value) &&
                     error <= std::max(rel_tol * std::abs(value), abs_tol);
  return result;
}

Result integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double rel_tol, double abs_tol, int max_intervals) {
  auto mapped = [&](double s) {
    if (s <= 0.0) return 0.0;
    const double u = a + (1.0 - s) / s;
    const double value = f(u) / (s * s);
    return std::isfinite(value) ? value : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

}  // namespace beurling::quadrature
