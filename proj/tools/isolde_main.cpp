#include <iostream>

#include "isolde/cli.hpp"

int main(int argc, char** argv) {
    return isolde::run_command(argc, argv, std::cout, std::cerr);
}
