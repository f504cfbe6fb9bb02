#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace boundrank {

/// Exit codes: 0 confirmed / ok, 2 refuted, 3 budget exceeded, 4 input error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boundrank
