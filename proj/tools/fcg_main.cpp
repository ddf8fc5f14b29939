#include <iostream>

#include "fcg/cli.hpp"

int main(int argc, char** argv) {
  return fcg::main_with_args({argv + 1, argv + argc}, std::cout, std::cerr);
}
