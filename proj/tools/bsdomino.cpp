#include <iostream>
#include <string>
#include <vector>

#include "bsdomino/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return bsdomino::cli::run(args, std::cout, std::cerr);
}
