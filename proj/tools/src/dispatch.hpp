// dispatch.hpp — CLI entry point, separated from main() so tests can drive
// the full command surface in-process.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace primelab::cli {

// Parses and runs one command line (without the program name). Results go to
// `out` or to the --out file with a manifest sidecar. Returns 0 on success,
// 2 on usage errors, 3 on domain/capacity errors.
int dispatch(std::vector<std::string> args, std::ostream& out,
             std::ostream& err);

}  // namespace primelab::cli
