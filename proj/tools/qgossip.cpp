#include <iostream>

#include "qgossip/cli.hpp"

int main(int argc, char** argv) { return qgossip::run_cli(argc, argv, std::cout, std::cerr); }
