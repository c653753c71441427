#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "beurling/geometry.hpp"

namespace beurling {

/// Complex samples at the cell centres of a uniform n×n grid over `box`.
/// Storage is row-major: index(i, j) = i·n + j, where row i runs along y and
/// column j along x, so cell (i, j) has centre box.lo + ((j+½)h, (i+½)h).
class GridFunction {
 public:
  GridFunction(Square box, int n);
  GridFunction(Square box, int n, std::vector<Complex> values);

  static GridFunction sample(Square box, int n, const std::function<Complex(Complex)>& f);

  const Square& box() const { return box_; }
  int n() const { return n_; }
  double spacing() const { return box_.side / n_; }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  Complex& operator()(int i, int j) { return values_[index(i, j)]; }
  Complex operator()(int i, int j) const { return values_[index(i, j)]; }
  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }

  Complex cell_center(int i, int j) const;

  /// Half-open index range [first, last) of cells whose centre coordinate lies
  /// in [lo, hi) along one axis; `origin` is the box's lower coordinate.
  std::pair<int, int> index_range(double origin, double lo, double hi) const;

  /// Row range (y) and column range (x) of cells with centres inside q.
  struct Block {
    int row_begin, row_end, col_begin, col_end;
    int count() const { return std::max(0, row_end - row_begin) * std::max(0, col_end - col_begin); }
  };
  Block cells_in(const Square& q) const;

  bool all_finite() const;

 private:
  Square box_;
  int n_;
  std::vector<Complex> values_;
};

bool is_power_of_two(int n);

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex c, const GridFunction& f);

/// CSV: a header line "n,side,center_re,center_im" carrying those four values,
/// then n² lines "i,j,re,im" in row-major order.
void write_csv(std::ostream& out, const GridFunction& f);
GridFunction read_csv(std::istream& in);
void write_csv_file(const std::string& path, const GridFunction& f);
GridFunction read_csv_file(const std::string& path);

}  // namespace beurling
