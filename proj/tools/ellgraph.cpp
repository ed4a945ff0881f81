#include <algorithm>
#include <iostream>
#include <iterator>
#include <string>
#include <vector>

#include "ellgraph/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  std::string input;
  // Only graph-file arguments read stdin, and only when spelled "-".
  if (std::find(args.begin() + 1, args.end(), "-") != args.end()) {
    input.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  ellgraph::cli::RunResult r = ellgraph::cli::run(args, input);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
