#include <iostream>

#include "fskit/cli.hpp"

int main(int argc, char **argv) { return fskit::run(argc, argv, std::cout, std::cerr); }
