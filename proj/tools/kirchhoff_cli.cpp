#include <iostream>
#include <string>
#include <vector>

#include "kirchhoff/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return kirchhoff::run_cli(args, std::cout, std::cerr);
}
