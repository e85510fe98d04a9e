#include <iostream>
#include <string>
#include <vector>

#include "pjones/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pjones::run_cli(args, std::cout, std::cerr);
}
