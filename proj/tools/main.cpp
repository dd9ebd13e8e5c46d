#include <iostream>

#include "gdes/cli.hpp"

int main(int argc, char** argv) { return gdes::run(argc, argv, std::cout, std::cerr); }
