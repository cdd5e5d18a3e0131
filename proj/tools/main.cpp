#include <iostream>

#include "laguerre/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return laguerre::run_cli(args, std::cout, std::cerr);
}
