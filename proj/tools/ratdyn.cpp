#include <iostream>
#include <string>
#include <vector>

#include "ratdyn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ratdyn::run_cli(args, std::cout, std::cerr);
}
