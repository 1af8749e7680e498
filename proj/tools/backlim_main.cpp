#include "backlim/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return backlim::run_cli(argc, argv, std::cout, std::cerr); }
