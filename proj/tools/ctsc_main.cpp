#include <iostream>

#include "ctsc/cli.hpp"

int main(int argc, char** argv) { return ctsc::cli_main(argc, argv, std::cout, std::cerr); }
