#include <iostream>
#include <string>
#include <vector>

#include "cvrisk/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cvrisk::run_cli(args, std::cout, std::cerr);
}
