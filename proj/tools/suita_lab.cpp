#include <iostream>
#include <string>
#include <vector>

#include "suita/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return suita::run_cli(args, std::cout, std::cerr);
}
