#include <iostream>

#include "affiso/cli.hpp"

int main(int argc, char** argv) {
    return affiso::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
