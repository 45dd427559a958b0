#include <iostream>

#include "torsolab/cli.hpp"

int main(int argc, char** argv) {
  return torsolab::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
