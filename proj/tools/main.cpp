#include <iostream>

#include "dbang/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dbang::cli::dispatch(args, std::cout, std::cerr);
}
