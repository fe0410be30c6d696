#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace causal::cli {

/// Exit codes: 0 verdict true / success, 1 verdict false, 2 usage or input
/// error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace causal::cli
