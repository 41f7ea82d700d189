#include <iostream>

#include "vclab/cli.hpp"

int main(int argc, char** argv) {
    return vclab::cli::run(argc, argv, std::cout, std::cerr);
}
