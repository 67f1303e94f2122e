#include "gregory/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return gregory::cli::run(argc, argv, std::cout, std::cerr);
}
