#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scg/game.hpp"

namespace scg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Runs one CLI invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rule specifiers: mc, poa-opt, pareto:X=<rational>, pareto:C=<rational>, custom:@file.json.
UtilityRule<Rational> exact_rule(const std::string& spec, std::size_t n_max);
UtilityRule<double> float_rule(const std::string& spec, std::size_t n_max);

}  // namespace scg::cli
