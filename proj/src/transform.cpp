#include "beurling/transform.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "beurling/error.hpp"

namespace beurling {
namespace {

// FFTW's planner is not reentrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan2d {
 public:
  Plan2d(int size, std::vector<Complex>& data, int sign) {
    auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_2d(size, size, buffer, buffer, sign, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw NumericalError("FFTW failed to create a plan");
  }
  Plan2d(const Plan2d&) = delete;
  Plan2d& operator=(const Plan2d&) = delete;
  ~Plan2d() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

void require_middle_half_support(const GridFunction& f) {
  const Square middle = f.box().dilate(0.5);
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) {
      if (f(i, j) != Complex(0.0, 0.0) && !middle.contains(f.cell_center(i, j))) {
        throw PreconditionError(fmt::format(
            "support violation: f must vanish outside the middle half of its box (cell {}, {})", i, j));
      }
    }
  }
}

}  // namespace

Complex beurling_kernel(Complex w) { return -1.0 / (std::numbers::pi * w * w); }

GridFunction zero_pad(const GridFunction& f, int pad_factor) {
  if (pad_factor < 1) throw PreconditionError("pad factor must be positive");
  const int n = f.n();
  const int big = n * pad_factor;
  GridFunction out(f.box().dilate(pad_factor), big);
  const int offset = (big - n) / 2;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i + offset, j + offset) = f(i, j);
  }
  return out;
}

GridFunction beurling_spectral_padded(const GridFunction& f, int pad_factor) {
  if (pad_factor < 2 || !is_power_of_two(pad_factor)) {
    throw PreconditionError(fmt::format("pad factor must be a power of 2 and >= 2, got {}", pad_factor));
  }
  require_middle_half_support(f);
  GridFunction padded = zero_pad(f, pad_factor);
  const int size = padded.n();
  std::vector<Complex> data(padded.values().begin(), padded.values().end());

  {
    Plan2d forward(size, data, FFTW_FORWARD);
    forward.execute();
  }
  // Row index is the y frequency, column index the x frequency.
  const auto signed_index = [size](int k) { return k < size / 2 ? k : k - size; };
  for (int i = 0; i < size; ++i) {
    const double ky = signed_index(i);
    for (int j = 0; j < size; ++j) {
      const double kx = signed_index(j);
      Complex& v = data[static_cast<std::size_t>(i) * size + j];
      if (kx == 0.0 && ky == 0.0) {
        v = 0.0;
      } else {
        const Complex xi(kx, ky);
        v *= std::conj(xi) / xi;
      }
    }
  }
  {
    Plan2d backward(size, data, FFTW_BACKWARD);
    backward.execute();
  }
  const double scale = 1.0 / (static_cast<double>(size) * size);
  for (auto& v : data) v *= scale;
  return GridFunction(padded.box(), size, std::move(data));
}

GridFunction beurling_spectral(const GridFunction& f, int pad_factor) {
  const GridFunction padded = beurling_spectral_padded(f, pad_factor);
  const int n = f.n();
  const int offset = (padded.n() - n) / 2;
  GridFunction out(f.box(), n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = padded(i + offset, j + offset);
  }
  return out;
}

namespace {

struct Source {
  Complex position;
  Complex weight;  // f(u) h²
};

std::vector<Source> collect_sources(const GridFunction& f) {
  const double area = f.spacing() * f.spacing();
  std::vector<Source> sources;
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) {
      if (f(i, j) != Complex(0.0, 0.0)) sources.push_back({f.cell_center(i, j), f(i, j) * area});
    }
  }
  return sources;
}

Complex direct_sum(const std::vector<Source>& sources, Complex z, double exclusion_radius) {
  const double r2 = exclusion_radius * exclusion_radius;
  Complex sum = 0.0;
  for (const auto& s : sources) {
    const Complex w = z - s.position;
    if (std::norm(w) < r2) continue;
    sum += s.weight / (w * w);
  }
  return -sum / std::numbers::pi;
}

void require_exclusion(const GridFunction& f, double exclusion_radius) {
  if (!(exclusion_radius >= 2.0 * f.spacing() * (1.0 - 1e-12))) {
    throw PreconditionError(fmt::format("exclusion radius {} below 2h = {}", exclusion_radius,
                                        2.0 * f.spacing()));
  }
}

}  // namespace

Complex beurling_direct(const GridFunction& f, Complex z, double exclusion_radius) {
  const Square& box = f.box();
  if (!(z.real() >= box.lo().real() && z.real() <= box.hi().real() && z.imag() >= box.lo().imag() &&
        z.imag() <= box.hi().imag())) {
    throw DomainError(fmt::format("evaluation point ({}, {}) outside the grid box", z.real(), z.imag()));
  }
  require_exclusion(f, exclusion_radius);
  return direct_sum(collect_sources(f), z, exclusion_radius);
}

GridFunction beurling_direct_grid(const GridFunction& f, double exclusion_radius,
                                  const std::vector<bool>* where) {
  require_exclusion(f, exclusion_radius);
  const auto sources = collect_sources(f);
  GridFunction out(f.box(), f.n());
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) {
      if (where != nullptr && !(*where)[f.index(i, j)]) continue;
      out(i, j) = direct_sum(sources, f.cell_center(i, j), exclusion_radius);
    }
  }
  return out;
}

std::vector<bool> membership(const PlanarDomain& domain, const GridFunction& f) {
  std::vector<bool> inside(static_cast<std::size_t>(f.n()) * f.n());
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) inside[f.index(i, j)] = domain.contains(f.cell_center(i, j));
  }
  return inside;
}

GridFunction mask(const PlanarDomain& domain, const GridFunction& f) {
  GridFunction out = f;
  const auto inside = membership(domain, f);
  for (std::size_t k = 0; k < inside.size(); ++k) {
    if (!inside[k]) out.values()[k] = 0.0;
  }
  return out;
}

GridFunction restricted_beurling(const PlanarDomain& domain, const GridFunction& f, Method method,
                                 int pad_factor) {
  if (!f.box().contains(domain.bounding_box())) {
    throw PreconditionError("box mismatch: the grid box must contain the domain's bounding box");
  }
  const auto inside = membership(domain, f);
  GridFunction masked = f;
  for (std::size_t k = 0; k < inside.size(); ++k) {
    if (!inside[k]) masked.values()[k] = 0.0;
  }
  GridFunction out = method == Method::spectral ? beurling_spectral(masked, pad_factor)
                                                : beurling_direct_grid(masked, 2.0 * f.spacing(), &inside);
  for (std::size_t k = 0; k < inside.size(); ++k) {
    if (!inside[k]) out.values()[k] = 0.0;
  }
  return out;
}

}  // namespace beurling
