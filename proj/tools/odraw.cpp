#include <iostream>

#include "odraw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return odraw::run_cli(args, std::cout, std::cerr);
}
