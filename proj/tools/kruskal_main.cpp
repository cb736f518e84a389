#include <iostream>
#include <string>
#include <vector>

#include "kruskal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kruskal::parse_and_dispatch(args, std::cout, std::cerr);
}
