#include "slopegap/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return slopegap::run_cli(argc, argv, std::cout, std::cerr); }
