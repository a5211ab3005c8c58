#include <iostream>

#include "mgonal/cli.hpp"

int main(int argc, char** argv) { return mgonal::cli::run(argc, argv, std::cout, std::cerr); }
