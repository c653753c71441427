#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beurling {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitUsage = 64;

/// Subcommands: check-modulus, transform, seminorm, extend, experiment.
/// args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beurling
