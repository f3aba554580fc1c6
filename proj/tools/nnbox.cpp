#include <iostream>
#include <string>
#include <vector>

#include "nnbox/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return nnbox::run_cli(args, std::cout, std::cerr);
}
