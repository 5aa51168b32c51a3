#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace poa {

// Whole command-line tool behind a testable seam. args excludes the program
// name. Exit codes: 0 = success / property holds, 1 = property fails,
// 2 = malformed input or violated precondition, 3 = budget exceeded.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace poa
