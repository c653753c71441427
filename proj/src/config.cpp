#include "beurling/config.hpp"

#include <fstream>

#include <fmt/format.h>

#include "beurling/error.hpp"
#include "beurling/grid.hpp"

namespace beurling {

Modulus ExperimentConfig::modulus() const { return Modulus::from_json(modulus_spec); }

PlanarDomain ExperimentConfig::domain() const { return PlanarDomain::from_json(domain_spec); }

Square ExperimentConfig::box() const {
  if (box_side > 0.0) return Square{Complex(0.0, 0.0), box_side};
  return domain().bounding_box().dilate(2.0);
}

void ExperimentConfig::validate() const {
  if (!is_power_of_two(n)) throw ConfigError(fmt::format("n = {} is not a power of 2", n));
  if (depth < 2) throw ConfigError(fmt::format("depth J = {} must be at least 2", depth));
  if (family_size < 1) throw ConfigError("family_size must be at least 1");
  if (pad_factor < 2 || !is_power_of_two(pad_factor)) {
    throw ConfigError("pad_factor must be a power of 2 and at least 2");
  }
  if (shifts < 1) throw ConfigError("shifts must be at least 1");
  if (lacunary_terms < 1) throw ConfigError("lacunary_terms must be at least 1");
  if (family != "mixed" && family != "lacunary" && family != "constants" && family != "holomorphic") {
    throw ConfigError(fmt::format("unknown test family '{}'", family));
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
  try {
    (void)modulus();
    (void)domain();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& spec) {
  ExperimentConfig cfg;
  try {
    if (!spec.is_object()) throw ConfigError("experiment config must be a JSON object");
    if (spec.contains("modulus")) cfg.modulus_spec = spec.at("modulus");
    if (spec.contains("domain")) cfg.domain_spec = spec.at("domain");
    cfg.n = spec.value("n", cfg.n);
    cfg.pad_factor = spec.value("pad_factor", cfg.pad_factor);
    cfg.depth = spec.value("depth", cfg.depth);
    cfg.shifts = spec.value("shifts", cfg.shifts);
    cfg.seed = spec.value("seed", cfg.seed);
    cfg.family_size = spec.value("family_size", cfg.family_size);
    cfg.output = spec.value("output", cfg.output);
    cfg.family = spec.value("family", cfg.family);
    cfg.family_scale = spec.value("family_scale", cfg.family_scale);
    cfg.lacunary_terms = spec.value("lacunary_terms", cfg.lacunary_terms);
    cfg.box_side = spec.value("box_side", cfg.box_side);
    cfg.epsilon = spec.value("epsilon", cfg.epsilon);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed experiment config: {}", e.what()));
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
  }
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"modulus", modulus_spec},   {"domain", domain_spec},
          {"n", n},                    {"pad_factor", pad_factor},
          {"depth", depth},            {"shifts", shifts},
          {"seed", seed},              {"family_size", family_size},
          {"output", output},          {"family", family},
          {"family_scale", family_scale}, {"lacunary_terms", lacunary_terms},
          {"box_side", box_side},      {"epsilon", epsilon}};
}

}  // namespace beurling
