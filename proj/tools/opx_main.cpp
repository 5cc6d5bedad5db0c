#include <iostream>

#include "opx/cli.hpp"

int main(int argc, char** argv) { return opx::cli::run(argc, argv, std::cout, std::cerr); }
