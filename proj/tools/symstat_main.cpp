#include "symstat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return symstat::run_cli(argc, argv, std::cout, std::cerr);
}
