#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace tuttemc::cli {

/// Runs one command line (without the program name). Returns the process
/// exit code: 0 on success, 1 on parse or I/O errors, 2 on domain errors.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tuttemc::cli
