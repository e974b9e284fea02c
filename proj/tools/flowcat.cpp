#include <iostream>

#include "flowcat/cli.hpp"

int main(int argc, char** argv) { return flowcat::run_cli(argc, argv, std::cout, std::cerr); }
