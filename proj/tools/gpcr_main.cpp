#include <iostream>

#include "gpcr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gpcr::cli::run(args, std::cout, std::cerr);
}
