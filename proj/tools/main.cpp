#include <iostream>

#include "coexpand/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return coexpand::cli::run(args, std::cout, std::cerr);
}
