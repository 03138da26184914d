#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return cg2a::cli::run(argc, argv, std::cout, std::cerr); }
