#include <iostream>

#include "lambdadicke/cli.hpp"

int main(int argc, char** argv) { return ldk::cli::run(argc, argv, std::cout, std::cerr); }
