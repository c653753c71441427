#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "beurling/geometry.hpp"
#include "beurling/moduli.hpp"

namespace beurling {

/// Parameters shared by every experiment. Parsed from JSON such as
///   {"modulus": {"family": "power", "alpha": 0.5},
///    "domain": {"kind": "disk", "radius": 1.0},
///    "n": 256, "pad_factor": 4, "depth": 5, "shifts": 4,
///    "seed": 1, "family_size": 10, "output": "ratios.csv"}
struct ExperimentConfig {
  nlohmann::json modulus_spec = {{"family", "power"}, {"alpha", 0.5}};
  nlohmann::json domain_spec = {{"kind", "disk"}, {"radius", 1.0}};
  int n = 256;
  int pad_factor = 4;
  int depth = 5;
  int shifts = 4;
  std::uint64_t seed = 1;
  int family_size = 10;
  std::string output;

  /// "mixed" (lacunary, bumps, smoothed indicators), "lacunary", "constants"
  /// or "holomorphic".
  std::string family = "mixed";
  double family_scale = 1.0;
  int lacunary_terms = 5;
  /// Side of the computational box centred at 0; 0 picks twice the domain's
  /// bounding box so the spectral support condition holds.
  double box_side = 0.0;
  double epsilon = 0.75;

  Modulus modulus() const;
  PlanarDomain domain() const;
  Square box() const;

  /// Throws ConfigError unless n is a power of 2, depth >= 2, family_size >= 1
  /// and both specs parse.
  void validate() const;

  static ExperimentConfig from_json(const nlohmann::json& spec);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

}  // namespace beurling
