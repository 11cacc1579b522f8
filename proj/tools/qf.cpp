#include <iostream>

#include "qf/cli.hpp"

int main(int argc, char** argv) { return qf::cli::run(argc, argv, std::cout, std::cerr); }
