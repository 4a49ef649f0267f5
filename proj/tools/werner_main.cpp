#include <iostream>

#include "werner/cli/commands.hpp"

int main(int argc, char** argv) { return werner::cli::run_cli(argc, argv, std::cout, std::cerr); }
