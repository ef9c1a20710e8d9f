#include <iostream>
#include <string>
#include <vector>

#include "fia/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fia::cli::run(args, std::cout, std::cerr);
}
