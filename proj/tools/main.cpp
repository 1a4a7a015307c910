#include <iostream>
#include <string>
#include <vector>

#include "atam/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return atam::cli::dispatch(args, std::cout, std::cerr);
}
