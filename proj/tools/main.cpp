#include "schumacher/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return schumacher::cli::dispatch(argc, argv, std::cout, std::cerr); }
