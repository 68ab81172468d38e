#include <iostream>

#include "ringsqz/cli/commands.hpp"

int main(int argc, char** argv) { return ringsqz::cli::run_cli(argc, argv, std::cout, std::cerr); }
