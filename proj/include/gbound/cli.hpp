#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace gbound::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNumerical = 3 };

/// Runs the command line `args` (args[0] is the program name). Reports go to
/// `out`, one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1,0.5:-1" -> {1, 0.5 - 1i}. Entries are "re" or "re:im".
std::vector<std::complex<double>> parse_coeff_list(const std::string& text);

}  // namespace gbound::cli
