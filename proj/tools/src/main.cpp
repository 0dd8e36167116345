#include <iostream>

#include "verhulst_cli/cli.hpp"

int main(int argc, char** argv) { return verhulst::cli::run_cli(argc, argv, std::cout, std::cerr); }
