#include <iostream>
#include <string>
#include <vector>

#include "conflox/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return conflox::run_cli(args, std::cout, std::cerr);
}
