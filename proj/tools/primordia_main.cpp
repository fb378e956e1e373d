#include <iostream>
#include <string>
#include <vector>

#include "primordia/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return primordia::dispatch(args, std::cout, std::cerr);
}
