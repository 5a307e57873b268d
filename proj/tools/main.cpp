#include <iostream>

#include "kth/cli/cli.hpp"

int main(int argc, char** argv) { return kth::cli::run(argc, argv, std::cout, std::cerr); }
