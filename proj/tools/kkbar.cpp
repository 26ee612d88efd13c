#include "kkbar/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return kkbar::cli::run(argc, argv, std::cout, std::cerr); }
