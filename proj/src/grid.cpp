#include "beurling/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "beurling/error.hpp"

namespace beurling {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(Square box, int n)
    : GridFunction(box, n, std::vector<Complex>(static_cast<std::size_t>(n) * n)) {}

GridFunction::GridFunction(Square box, int n, std::vector<Complex> values)
    : box_(box), n_(n), values_(std::move(values)) {
  if (!is_power_of_two(n_)) throw ValidationError(fmt::format("grid size {} is not a power of 2", n_));
  if (!(box_.side > 0.0) || !std::isfinite(box_.side)) {
    throw ValidationError(fmt::format("grid box side must be positive, got {}", box_.side));
  }
  if (values_.size() != static_cast<std::size_t>(n_) * n_) {
    throw ValidationError(fmt::format("grid expects {} values, got {}", n_ * n_, values_.size()));
  }
}

GridFunction GridFunction::sample(Square box, int n, const std::function<Complex(Complex)>& f) {
  GridFunction g(box, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = f(g.cell_center(i, j));
  }
  return g;
}

Complex GridFunction::cell_center(int i, int j) const {
  const double h = spacing();
  const Complex lo = box_.lo();
  return {lo.real() + (j + 0.5) * h, lo.imag() + (i + 0.5) * h};
}

std::pair<int, int> GridFunction::index_range(double origin, double lo, double hi) const {
  const double h = spacing();
  const int first = static_cast<int>(std::ceil((lo - origin) / h - 0.5));
  const int last = static_cast<int>(std::ceil((hi - origin) / h - 0.5));
  return {std::clamp(first, 0, n_), std::clamp(last, 0, n_)};
}

GridFunction::Block GridFunction::cells_in(const Square& q) const {
  const Complex origin = box_.lo();
  const auto [c0, c1] = index_range(origin.real(), q.lo().real(), q.hi().real());
  const auto [r0, r1] = index_range(origin.imag(), q.lo().imag(), q.hi().imag());
  return {r0, r1, c0, c1};
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (a.n() != b.n() || a.box().side != b.box().side || a.box().center != b.box().center) {
    throw PreconditionError("grid functions live on different grids");
  }
  GridFunction out(a.box(), a.n());
  for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] = a.values()[k] + b.values()[k];
  return out;
}

GridFunction operator*(Complex c, const GridFunction& f) {
  GridFunction out(f.box(), f.n());
  for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] = c * f.values()[k];
  return out;
}

void write_csv(std::ostream& out, const GridFunction& f) {
  out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", f.n(), f.box().side, f.box().center.real(),
                     f.box().center.imag());
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) {
      const Complex v = f(i, j);
      out << fmt::format("{},{},{:.17g},{:.17g}\n", i, j, v.real(), v.imag());
    }
  }
}

GridFunction read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("grid CSV is empty");
  // Tolerate a column-name line ahead of the description values.
  if (line.rfind("n,side", 0) == 0 && !std::getline(in, line)) {
    throw ValidationError("grid CSV is missing the grid description line");
  }
  int n = 0;
  double side = 0.0, cre = 0.0, cim = 0.0;
  {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    if (!(fields >> n >> side >> cre >> cim)) throw ValidationError("malformed grid description line");
  }
  if (!is_power_of_two(n)) throw ValidationError(fmt::format("grid size {} is not a power of 2", n));
  GridFunction f(Square{Complex(cre, cim), side}, n);
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    int i = 0, j = 0;
    double re = 0.0, im = 0.0;
    if (!(fields >> i >> j >> re >> im)) throw ValidationError(fmt::format("malformed grid row '{}'", line));
    if (i < 0 || i >= n || j < 0 || j >= n) {
      throw ValidationError(fmt::format("grid row index ({}, {}) out of range", i, j));
    }
    f(i, j) = Complex(re, im);
    ++seen;
  }
  if (seen != static_cast<std::size_t>(n) * n) {
    throw ValidationError(fmt::format("grid CSV has {} rows, expected {}", seen, n * n));
  }
  return f;
}

void write_csv_file(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw ValidationError(fmt::format("cannot open '{}' for writing", path));
  write_csv(out, f);
}

GridFunction read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open '{}'", path));
  return read_csv(in);
}

}  // namespace beurling
