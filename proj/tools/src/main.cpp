#include <iostream>

#include "fkdet_cli/cli.hpp"

int main(int argc, char** argv) { return fkdet::cli::run(argc, argv, std::cout, std::cerr); }
