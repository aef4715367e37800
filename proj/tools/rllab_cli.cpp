#include <iostream>

#include "rllab/harness/commands.hpp"

int main(int argc, char** argv) { return rllab::harness::run_cli(argc, argv, std::cout, std::cerr); }
