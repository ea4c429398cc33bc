#include <iostream>
#include <string>
#include <vector>

#include "hcw/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hcw::run_cli(args, std::cout, std::cerr);
}
