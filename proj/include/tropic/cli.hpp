#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropic {

/// Runs the `tropic` command line. `args` excludes the program name.
/// Returns 0 on success, 2 on usage errors and 1 on domain errors; error
/// messages go to `err`, results to `out` unless `--out` names a file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Version string printed in the first manifest line.
const char* version() noexcept;

} // namespace tropic
