#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fdsim {

/// Parse flags, run the campaign(s) and write outputs. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdsim
