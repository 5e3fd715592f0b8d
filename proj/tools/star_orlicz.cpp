#include <iostream>

#include "starorlicz/cli.hpp"

int main(int argc, char** argv) {
  return starorlicz::cli::main_entry(argc, argv, std::cout, std::cerr);
}
