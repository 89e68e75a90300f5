#include <iostream>

#include "zpart/cli.hpp"

int main(int argc, char** argv) { return zpart::cli::run(argc, argv, std::cout, std::cerr); }
