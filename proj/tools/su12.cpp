#include <iostream>

#include "su12/cli/commands.hpp"

int main(int argc, char** argv) { return su12::cli::run(argc, argv, std::cout, std::cerr); }
