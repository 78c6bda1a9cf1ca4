#include <iostream>

#include "qdamp/cli.hpp"

int main(int argc, char** argv) { return qdamp::cli::run(argc, argv, std::cout, std::cerr); }
