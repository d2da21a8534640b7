#include "papf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return papf::cli::main(argc, argv, std::cout, std::cerr);
}
