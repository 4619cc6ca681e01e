#include <iostream>

#include "minormax/cli.hpp"

int main(int argc, char** argv) { return minormax::cli_main(argc, argv, std::cout, std::cerr); }
