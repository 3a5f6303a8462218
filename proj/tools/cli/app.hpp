#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vortexlab::cli {

/// Full command-line front end. Returns the process exit code.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vortexlab::cli
