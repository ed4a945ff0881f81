#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ellgraph::cli {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

/// Exit codes: 0 success or "yes", 1 a "no" answer, 2 usage, parse or domain
/// error. args[0] is the program name.
RunResult run(const std::vector<std::string>& args, std::string_view stdin_text = {});

}  // namespace ellgraph::cli
