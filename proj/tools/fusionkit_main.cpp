#include <iostream>
#include <vector>

#include "fusionkit/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fusionkit::cli::run(args, std::cout, std::cerr);
}
