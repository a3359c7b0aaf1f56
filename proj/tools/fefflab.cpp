#include <iostream>

#include "fefflab/cli.hpp"

int main(int argc, char** argv) { return fefflab::dispatch(argc, argv, std::cout, std::cerr); }
