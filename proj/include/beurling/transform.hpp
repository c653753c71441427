#pragma once

#include "beurling/geometry.hpp"
#include "beurling/grid.hpp"

namespace beurling {

enum class Method { spectral, direct };

/// Kernel of B: Bf(z) = ∫ f(u) K(z − u) dA(u) with K(w) = −1/(π w²).
Complex beurling_kernel(Complex w);

/// f embedded at the centre of a zero grid pad_factor times larger.
GridFunction zero_pad(const GridFunction& f, int pad_factor);

/// B f on the padded grid: FFT, multiply by conj(ξ)/ξ (0 at ξ = 0), inverse FFT.
/// f must vanish outside the middle half of its box.
GridFunction beurling_spectral_padded(const GridFunction& f, int pad_factor = 4);

/// beurling_spectral_padded cropped back to f's box.
GridFunction beurling_spectral(const GridFunction& f, int pad_factor = 4);

/// Midpoint-rule −(1/π) Σ f(u) h² / (z − u)² over cells with |z − u| ≥ exclusion_radius.
Complex beurling_direct(const GridFunction& f, Complex z, double exclusion_radius);

/// beurling_direct at every cell centre (or only those with `where` set).
GridFunction beurling_direct_grid(const GridFunction& f, double exclusion_radius,
                                  const std::vector<bool>* where = nullptr);

/// χ_Ω f, masking by cell-centre membership.
GridFunction mask(const PlanarDomain& domain, const GridFunction& f);

/// Cell-centre membership flags for Ω on f's grid.
std::vector<bool> membership(const PlanarDomain& domain, const GridFunction& f);

/// B_Ω f = B(χ_Ω f) on Ω, zero elsewhere.
GridFunction restricted_beurling(const PlanarDomain& domain, const GridFunction& f, Method method,
                                 int pad_factor = 4);

}  // namespace beurling
