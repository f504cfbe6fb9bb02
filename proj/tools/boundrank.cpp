#include <iostream>

#include "boundrank/cli.hpp"

int main(int argc, char** argv) { return boundrank::run_cli(argc, argv, std::cout, std::cerr); }
