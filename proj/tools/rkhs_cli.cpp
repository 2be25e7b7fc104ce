#include <iostream>

#include "rkhs/cli.hpp"

int main(int argc, char** argv) { return rkhs::run(argc, argv, std::cout, std::cerr); }
