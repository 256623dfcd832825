#include <iostream>

#include "pspectral_cli/cli.hpp"

int main(int argc, char** argv) {
  return pspectral::cli::run(argc, argv, std::cout, std::cerr);
}
