#include <iostream>

#include "forestsos/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto r = forestsos::run_command(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.code;
}
