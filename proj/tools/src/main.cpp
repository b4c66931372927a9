#include <iostream>
#include <string>
#include <vector>

#include "assoc60/cli/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return assoc60::cli::run_cli(args, std::cout, std::cerr);
}
