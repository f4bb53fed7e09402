#include <iostream>
#include <string>
#include <vector>

#include "lmm/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return lmm::cli::run(args, std::cout, std::cerr);
}
