#include <iostream>

#include "penlq/cli.hpp"

int main(int argc, char** argv) { return penlq::cli::run(argc, argv, std::cout, std::cerr); }
