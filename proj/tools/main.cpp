#include <iostream>

#include "lbk/cli.hpp"

int main(int argc, char** argv) {
  return lbk::run_cli(argc, argv, std::cout, std::cerr);
}
