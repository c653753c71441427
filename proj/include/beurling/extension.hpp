#pragma once

#include "beurling/geometry.hpp"
#include "beurling/grid.hpp"

namespace beurling {

struct ExtensionResult {
  GridFunction values;
  /// Empirical bilipschitz constant of the reflection on its collar.
  double bilipschitz = 1.0;
};

/// f̃ = f on the unit disk and f̃(z) = f(1/z̄) outside, sampled on an n×n grid
/// over target_box (n = 0 keeps f's n). Samples of f come from bilinear
/// interpolation over the disk's cells only.
ExtensionResult disk_reflect_extend(const GridFunction& f, const Square& target_box, int n = 0);

/// Radial quasi-reflection f̃(ρe^{iθ}) = f((r(θ)²/ρ) e^{iθ}) for
/// r(θ) < ρ < 1.25 r(θ), constant along rays beyond the collar, f̃ = f on Ω.
ExtensionResult collar_reflect_extend(const PlanarDomain& domain, const GridFunction& f,
                                      const Square& target_box, int n = 0);

}  // namespace beurling
