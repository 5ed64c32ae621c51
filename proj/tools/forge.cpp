#include <iostream>

#include "dioph/expcli/cli.hpp"

int main(int argc, char** argv) { return dioph::expcli::cli_main(argc, argv, std::cout, std::cerr); }
