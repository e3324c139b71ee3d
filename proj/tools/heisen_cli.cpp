#include <iostream>

#include "heisen_commands.hpp"

int main(int argc, char** argv) { return heisen::cli::run_cli(argc, argv, std::cout, std::cerr); }
