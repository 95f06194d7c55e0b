#include "medusa/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return medusa::run_cli(argc, argv, std::cout, std::cerr);
}
