#include <iostream>

#include "ocraug/cli.hpp"

int main(int argc, char** argv) { return ocraug::run_cli(argc, argv, std::cout, std::cerr); }
