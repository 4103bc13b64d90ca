#include <iostream>
#include <string>
#include <vector>

#include "fuzzy_placer/cli.hpp"

int main(int argc, char** argv) {
  return fuzzy_placer::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
