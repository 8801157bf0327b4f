// exnlint - command-line entry point
#include <iostream>

#include "exnlint/cli.hpp"

int main(int argc, char** argv) {
  return exnlint::main_with_args(argc, argv, std::cout, std::cerr);
}
