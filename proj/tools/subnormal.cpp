#include <iostream>
#include <string>
#include <vector>

#include "subnormal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return subnormal::dispatch(args, std::cout, std::cerr);
}
