#include <iostream>

#include "enumcomp/cli.hpp"

int main(int argc, char** argv) {
    return enumcomp::cli_dispatch(argc, argv, std::cout, std::cerr, std::cin);
}
