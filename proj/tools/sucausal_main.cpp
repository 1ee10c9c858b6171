#include <iostream>
#include <string>
#include <vector>

#include "su/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return su::run_cli(args, std::cout, std::cerr);
}
