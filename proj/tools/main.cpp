#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return qseg::cli::run(argc, argv, std::cout, std::cerr); }
