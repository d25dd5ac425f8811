#include <iostream>

#include "wellcascade/cli.hpp"

int main(int argc, char** argv) { return wellcascade::cli::run(argc, argv, std::cout, std::cerr); }
