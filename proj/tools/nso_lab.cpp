#include <iostream>

#include "nsolab/cli.hpp"

int main(int argc, char** argv) { return nsolab::run_cli(argc, argv, std::cout, std::cerr); }
