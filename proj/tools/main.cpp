#include <iostream>

#include "lpencil/cli.hpp"

int main(int argc, char** argv) { return lpencil::run_cli(argc, argv, std::cout, std::cerr); }
