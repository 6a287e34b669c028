#include <iostream>
#include <string>
#include <vector>

#include "epigame/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epigame::run_cli(args, std::cout, std::cerr);
}
