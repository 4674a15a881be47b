#include <iostream>

#include "semrank/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return semrank::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
