#include <iostream>

#include "gvb/cli.hpp"

int main(int argc, char** argv) { return gvb::cli::run(argc, argv, std::cout, std::cerr); }
