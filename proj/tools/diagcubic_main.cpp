#include "diagcubic/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return diagcubic::cli::run(argc, argv, std::cout, std::cerr); }
