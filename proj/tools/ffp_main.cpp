#include <iostream>

#include "ffp/cli.hpp"

int main(int argc, char** argv) { return ffp::run_cli(argc, argv, std::cout, std::cerr); }
