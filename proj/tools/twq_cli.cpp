#include <iostream>
#include <string>
#include <vector>

#include "twq/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return twq::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
