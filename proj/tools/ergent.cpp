#include <iostream>

#include "ergent/cli/app.hpp"

int main(int argc, char** argv) {
    return ergent::cli::run(argc, argv, std::cout, std::cerr);
}
