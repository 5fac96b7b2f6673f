#include <iostream>
#include <string>
#include <vector>

#include "epsilite/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epsilite::cli::run(args, std::cout, std::cerr, std::cin);
}
