#include <iostream>

#include "fhardy/cli.hpp"

int main(int argc, char** argv) { return fhardy::run_cli(argc, argv, std::cout, std::cerr); }
