#include <iostream>

#include "padeclust/cli.hpp"

int main(int argc, char** argv) {
  return padeclust::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
