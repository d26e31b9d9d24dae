#include "gsdyn/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gsdyn::cli_main(argc, argv, std::cout, std::cerr); }
