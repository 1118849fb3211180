#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anyonsim::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kFamilyMismatch = 3,
  kPreconditionFailure = 4,
  kInvariantBreach = 5,
};

/// "a:b:n" (n points, endpoints included) or a single value. Values accept
/// plain reals and multiples of pi such as "pi", "-pi/2", "3pi/4", "2*pi".
std::vector<double> parse_grid(const std::string& text);
double parse_angle(const std::string& token);

/// Entry point shared by the executable and the tests; args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anyonsim::cli
