#include <iostream>
#include <string>
#include <vector>

#include "nilca/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilca::run(args, std::cout, std::cerr);
}
