#include <iostream>

#include "chronolog/cli.hpp"

int main(int argc, char **argv) { return chronolog::run_cli(argc, argv, std::cout, std::cerr); }
