#include <iostream>
#include <string>
#include <vector>

#include "tracefuzz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tracefuzz::run_cli(args, std::cout, std::cerr);
}
