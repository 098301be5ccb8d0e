#include <iostream>

#include "chsh/cli.hpp"

int main(int argc, char** argv) {
  return chsh::cli::run_cli(argc, argv, std::cout, std::cerr);
}
