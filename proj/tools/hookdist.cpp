#include <iostream>

#include "hookdist/cli.hpp"

int main(int argc, char** argv) { return hookdist::cli::run(argc, argv, std::cout, std::cerr); }
