#include "beurling/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "beurling/error.hpp"
#include "beurling/extension.hpp"
#include "beurling/harness.hpp"
#include "beurling/moduli.hpp"
#include "beurling/seminorms.hpp"
#include "beurling/transform.hpp"

namespace beurling {

namespace {

const std::vector<std::string> kSubcommands = {"check-modulus", "transform", "seminorm", "extend",
                                               "experiment"};

constexpr const char* kUsage =
    "usage: beurling_cli <subcommand> [options]\n"
    "subcommands:\n"
    "  check-modulus  --family power|log --alpha A --beta B [--cap T] [--epsilon E] | --modulus JSON\n"
    "  transform      --input grid.csv [--method spectral|direct] [--domain JSON] [--pad 4] [--output out.csv]\n"
    "  seminorm       --input grid.csv --modulus JSON [--kind campanato|bloch] [--domain JSON] ...\n"
    "  extend         --input grid.csv [--domain JSON] [--box-side S] [--n N] [--output out.csv]\n"
    "  experiment     <invariance|lift|bloch|embedding|extension|decomposition> --config c.json\n";

/// Inline JSON when the argument starts with '{', otherwise a file path.
nlohmann::json json_argument(const std::string& text, const std::string& what) {
  try {
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && text[first] == '{') return nlohmann::json::parse(text);
    std::ifstream in(text);
    if (!in) throw ConfigError(fmt::format("cannot open {} file '{}'", what, text));
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("{} is not valid JSON: {}", what, e.what()));
  }
}

void emit_grid(const GridFunction& g, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    write_csv(out, g);
  } else {
    write_csv_file(path, g);
  }
}

int check_modulus(const std::string& family, std::optional<double> alpha, std::optional<double> beta,
                  double cap, double epsilon, const std::string& spec, int depth, std::ostream& out) {
  std::optional<Modulus> m;
  if (!spec.empty()) {
    m = Modulus::from_json(json_argument(spec, "modulus"));
  } else if (family == "power") {
    if (!alpha) throw ConfigError("--alpha is required for the power family");
    m = Modulus::power(*alpha, cap);
  } else if (family == "log") {
    if (!beta) throw ConfigError("--beta is required for the log family");
    m = Modulus::log(*beta, cap);
  } else {
    throw ConfigError(fmt::format("unknown modulus family '{}' (use --modulus for tabulated)", family));
  }
  const auto r = check_regular(*m, epsilon, depth);
  out << fmt::format("dini_value={:.12g}\n", r.dini_value);
  out << fmt::format("epsilon={:.12g}\n", r.epsilon);
  out << fmt::format("almost_dec_constant={:.12g}\n", r.almost_dec_constant);
  out << fmt::format("weak_constant={:.12g}\n", r.weak_constant);
  out << "is_regular=" << (r.is_regular ? "true" : "false") << "\n";
  return kExitOk;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
    if (!args.empty() && (args.front() == "--help" || args.front() == "-h")) {
      out << kUsage;
      return kExitOk;
    }
    if (!args.empty()) err << "unknown subcommand '" << args.front() << "'\n";
    err << kUsage;
    return kExitUsage;
  }

  CLI::App app{"Beurling transform on BMO_omega and Lipschitz spaces", "beurling_cli"};
  app.require_subcommand(1);

  std::string family = "power";
  std::optional<double> alpha;
  std::optional<double> beta;
  double cap = 1.0;
  double epsilon = 0.75;
  std::string modulus_spec;
  int regularity_depth = 30;
  auto* check = app.add_subcommand("check-modulus", "certify regularity of a modulus");
  check->add_option("--family", family, "power or log");
  check->add_option("--alpha", alpha);
  check->add_option("--beta", beta);
  check->add_option("--cap", cap);
  check->add_option("--epsilon", epsilon);
  check->add_option("--modulus", modulus_spec, "modulus JSON or file");
  check->add_option("--depth", regularity_depth);

  std::string input;
  std::string output;
  std::string domain_spec;
  std::string method = "spectral";
  int pad = 4;
  double exclusion = 0.0;
  auto* transform = app.add_subcommand("transform", "apply B or B_Omega to a grid CSV");
  transform->add_option("--input", input)->required();
  transform->add_option("--method", method)->check(CLI::IsMember({"spectral", "direct"}));
  transform->add_option("--domain", domain_spec, "domain JSON or file; omit for the whole plane");
  transform->add_option("--pad", pad);
  transform->add_option("--exclusion", exclusion, "direct method exclusion radius (default 2h)");
  transform->add_option("--output", output);

  std::string kind = "campanato";
  int p = 1;
  int depth = 5;
  int shifts = 4;
  std::string center = "mean";
  double rho_min = 0.0;
  double rho_max = 0.25;
  std::string side = "interior";
  auto* seminorm = app.add_subcommand("seminorm", "estimate a seminorm of a grid CSV");
  seminorm->add_option("--input", input)->required();
  seminorm->add_option("--modulus", modulus_spec)->required();
  seminorm->add_option("--kind", kind)->check(CLI::IsMember({"campanato", "bloch"}));
  seminorm->add_option("--domain", domain_spec);
  seminorm->add_option("--p", p)->check(CLI::IsMember({1, 2}));
  seminorm->add_option("--depth", depth);
  seminorm->add_option("--shifts", shifts);
  seminorm->add_option("--center", center)->check(CLI::IsMember({"mean", "best"}));
  seminorm->add_option("--rho-min", rho_min, "Bloch collar (default 4h)");
  seminorm->add_option("--rho-max", rho_max);
  seminorm->add_option("--side", side)->check(CLI::IsMember({"interior", "exterior"}));
  seminorm->add_option("--output", output, "per-scale CSV");

  double box_side = 0.0;
  int n = 0;
  auto* extend = app.add_subcommand("extend", "extend a function on a domain to the plane");
  extend->add_option("--input", input)->required();
  extend->add_option("--domain", domain_spec, "defaults to the unit disk");
  extend->add_option("--box-side", box_side, "target box side (default: input box)");
  extend->add_option("--n", n);
  extend->add_option("--output", output);

  std::string experiment_name;
  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "run an experiment and write its ratio CSV");
  experiment->add_option("name", experiment_name)->required();
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--output", output, "overrides the config's output path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (*check) {
      return check_modulus(family, alpha, beta, cap, epsilon, modulus_spec, regularity_depth, out);
    }
    if (*transform) {
      const GridFunction f = read_csv_file(input);
      const Method m = method == "direct" ? Method::direct : Method::spectral;
      GridFunction result(f.box(), f.n());
      if (!domain_spec.empty()) {
        result = restricted_beurling(PlanarDomain::from_json(json_argument(domain_spec, "domain")), f, m, pad);
      } else if (m == Method::spectral) {
        result = beurling_spectral(f, pad);
      } else {
        result = beurling_direct_grid(f, exclusion > 0.0 ? exclusion : 2.0 * f.spacing());
      }
      emit_grid(result, output, out);
      return kExitOk;
    }
    if (*seminorm) {
      const GridFunction f = read_csv_file(input);
      const Modulus m = Modulus::from_json(json_argument(modulus_spec, "modulus"));
      SeminormEstimate e;
      if (kind == "bloch") {
        const PlanarDomain d = domain_spec.empty() ? PlanarDomain::disk(1.0)
                                                   : PlanarDomain::from_json(json_argument(domain_spec, "domain"));
        const Collar collar{rho_min > 0.0 ? rho_min : 4.0 * f.spacing(), rho_max};
        e = bloch_seminorm(f, d, m, collar, side == "exterior" ? Side::exterior : Side::interior);
      } else {
        CampanatoOptions options;
        options.p = p;
        options.depth = depth;
        options.shifts = shifts;
        options.center = center == "best" ? CenterChoice::best_constant : CenterChoice::mean;
        if (domain_spec.empty()) {
          e = campanato_seminorm(f, m, options);
        } else {
          e = campanato_seminorm(f, m, PlanarDomain::from_json(json_argument(domain_spec, "domain")), options);
        }
      }
      out << fmt::format("value={:.12g}\n", e.value);
      if (!output.empty()) {
        std::ofstream file(output);
        if (!file) throw ValidationError(fmt::format("cannot write '{}'", output));
        write_csv(file, e);
      }
      return kExitOk;
    }
    if (*extend) {
      const GridFunction f = read_csv_file(input);
      const Square target{f.box().center, box_side > 0.0 ? box_side : f.box().side};
      ExtensionResult r = domain_spec.empty()
                              ? disk_reflect_extend(f, target, n)
                              : collar_reflect_extend(PlanarDomain::from_json(json_argument(domain_spec, "domain")),
                                                      f, target, n);
      err << fmt::format("bilipschitz={:.6g}\n", r.bilipschitz);
      emit_grid(r.values, output, out);
      return kExitOk;
    }
    if (*experiment) {
      ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
      if (!output.empty()) cfg.output = output;
      const RatioReport report = run_experiment(experiment_name, cfg);
      if (cfg.output.empty()) {
        write_csv(out, report);
      } else {
        write_csv_file(cfg.output, report);
        out << fmt::format("wrote {} rows to {}\n", report.rows.size(), cfg.output);
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  err << kUsage;
  return kExitUsage;
}

}  // namespace beurling
