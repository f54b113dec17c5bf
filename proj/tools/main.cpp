#include <iostream>
#include <string>
#include <vector>

#include "maximin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return maximin::cli_main(args, std::cout, std::cerr);
}
