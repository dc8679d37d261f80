#include <iostream>
#include <string>
#include <vector>

#include "grafrec/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return grafrec::run_cli(args, std::cout, std::cerr);
}
