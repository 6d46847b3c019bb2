#include <iostream>

#include "pseudoplap/harness.hpp"

int main(int argc, char** argv) { return pseudoplap::cli_main(argc, argv, std::cout, std::cerr); }
