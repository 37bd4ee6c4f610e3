#include "polyloop/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return polyloop::cli::run(argc, argv, std::cout, std::cerr); }
