#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace upho {

/// Entry point of the uphocore command line tool. Returns the process exit
/// code: 0 on success, 1 on a mathematical verdict failure (e.g. a
/// cancellativity violation found by check-cancel), 2 on usage or input
/// format errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace upho
