#include <iostream>

#include "absep/cli.hpp"

int main(int argc, char** argv) {
  return absep::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
