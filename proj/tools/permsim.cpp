#include "permsim/cli/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return permsim::cli::run(argc, argv, std::cout, std::cerr); }
