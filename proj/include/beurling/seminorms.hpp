#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "beurling/geometry.hpp"
#include "beurling/grid.hpp"
#include "beurling/moduli.hpp"

namespace beurling {

struct ScaleSup {
  double scale = 0.0;
  double sup = 0.0;
  Complex where;  // centre of the maximising square, pair midpoint or cell
};

/// Supremum of a seminorm sweep. value == max over per_scale sups.
struct SeminormEstimate {
  double value = 0.0;
  Square argmax_square;
  std::optional<std::pair<Complex, Complex>> argmax_pair;  // Lipschitz only
  std::vector<ScaleSup> per_scale;
};

/// Rows "scale,sup_at_scale,argmax_cx,argmax_cy" under that header.
void write_csv(std::ostream& out, const SeminormEstimate& estimate);

/// g_Q: average of the samples whose cell centres lie in Q.
Complex square_mean(const GridFunction& f, const Square& q);

/// f_{Q|Ω}: average over cells with centres in Q ∩ Ω.
Complex domain_mean(const GridFunction& f, const Square& q, const PlanarDomain& domain);

enum class CenterChoice {
  mean,           // f_Q or f_{Q|Ω}
  best_constant,  // minimiser of the L^p deviation (median for p = 1)
};

struct CampanatoOptions {
  int p = 1;
  int depth = 5;
  int shifts = 4;
  CenterChoice center = CenterChoice::mean;
};

/// Sweep of (1/ω(ℓ)) ‖f − f_Q‖_{L^p(Q, dA/|Q|)} over squares of side
/// ℓ_j = side·2^{-j}, j = 0..depth, placed on a lattice of step ℓ_j/shifts and
/// lying inside the grid box.
SeminormEstimate campanato_seminorm(const GridFunction& f, const Modulus& m,
                                    const CampanatoOptions& options);

/// Same sweep restricted to Ω: integrate over Q ∩ Ω, normalise by |Q|, centre
/// at f_{Q|Ω}. Squares missing Ω contribute nothing.
SeminormEstimate campanato_seminorm(const GridFunction& f, const Modulus& m,
                                    const PlanarDomain& domain, const CampanatoOptions& options);

/// sup |f(z) − f(w)| / ω(|z − w|) over sample pairs; above 2000 points a fixed
/// budget of 10⁶ random pairs drawn from `seed` is used.
SeminormEstimate lipschitz_seminorm(std::span<const Complex> points, std::span<const Complex> values,
                                    const Modulus& m, std::uint64_t seed = 0);

struct Collar {
  double rho_min = 0.0;
  double rho_max = 0.0;
};

enum class Side { interior, exterior };

/// sup |∇f(z)| ρ(z) / ω(ρ(z)) over cells on the chosen side of ∂Ω with
/// ρ(z) ∈ [rho_min, rho_max]. |∇f| is the Euclidean norm of the Wirtinger
/// pair (∂f, ∂̄f) from centred differences, so |∇f| = |f'| for holomorphic f.
SeminormEstimate bloch_seminorm(const GridFunction& f, const PlanarDomain& domain, const Modulus& m,
                                Collar collar, Side side = Side::interior);

/// |g_Q − g_{2Q}|.
double mean_gap(const GridFunction& f, const Square& q);

/// max |f| over the cells of Ω (or the whole grid when domain is null).
double sup_norm(const GridFunction& f, const PlanarDomain* domain = nullptr);

}  // namespace beurling
