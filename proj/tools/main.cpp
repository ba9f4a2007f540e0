#include <iostream>
#include <string>
#include <vector>

#include "truncent/cli.hpp"

int main(int argc, char **argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return truncent::cli::run(args, std::cout, std::cerr);
}
