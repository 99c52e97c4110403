#include <iostream>
#include <string>
#include <vector>

#include "rbenv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rbenv::runCommand(args, std::cout, std::cerr);
}
