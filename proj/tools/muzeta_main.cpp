#include <iostream>
#include <string>
#include <vector>

#include "muzeta/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return muzeta::cli::run_cli(std::move(args), std::cout, std::cerr);
}
