#include <iostream>
#include <string>
#include <vector>

#include "anyonsim/cli.hpp"

int main(int argc, char** argv) {
  return anyonsim::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
