#include <iostream>
#include <string>
#include <vector>

#include "pht/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return pht::cli::run(args, std::cout, std::cerr);
}
