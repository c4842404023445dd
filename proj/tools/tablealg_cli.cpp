#include <iostream>
#include <string>
#include <vector>

#include "tablealg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tablealg::cli::run(args, std::cout, std::cerr);
}
