#include <iostream>
#include <string>
#include <vector>

#include "citerank/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return citerank::cli::run(args, std::cout, std::cerr);
}
