#include <iostream>

#include "hadamax/cli.hpp"

int main(int argc, char** argv) { return hadamax::cli::run(argc, argv, std::cout, std::cerr); }
