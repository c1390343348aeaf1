#include <iostream>
#include <string>
#include <vector>

#include "cutpoint/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cutpoint::cli::run_command(args, std::cout, std::cerr);
}
