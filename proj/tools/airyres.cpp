#include <iostream>

#include "airy/cli.hpp"

int main(int argc, char** argv) { return airy::cli::main_entry(argc, argv, std::cout, std::cerr); }
