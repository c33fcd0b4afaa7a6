#include <iostream>

#include "syncap/cli.hpp"

int main(int argc, char** argv) { return syncap::run_cli(argc, argv, std::cout, std::cerr); }
