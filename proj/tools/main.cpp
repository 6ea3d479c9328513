#include <iostream>

#include "scheme_forge/cli.hpp"

int main(int argc, char** argv) { return scheme_forge::run(argc, argv, std::cout, std::cerr); }
