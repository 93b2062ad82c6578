#include <iostream>

#include "fqc/app/cli.hpp"

int main(int argc, char** argv) { return fqc::app::run_cli(argc, argv, std::cout, std::cerr); }
