#include <iostream>

#include "realsing/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return realsing::run(args, std::cout, std::cerr);
}
