#include <iostream>

#include "subguard_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subguard::cli::run(args, std::cout, std::cerr);
}
