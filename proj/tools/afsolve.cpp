#include <iostream>
#include <string>
#include <vector>

#include "finarg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return finarg::run_cli(args, std::cout, std::cerr);
}
