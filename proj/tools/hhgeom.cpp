#include "hhgeom/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hhgeom::cli::main_entry(argc, argv, std::cout, std::cerr); }
