#include <iostream>
#include <string>
#include <vector>

#include <tkl/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tkl::cli::run(std::move(args), std::cout, std::cerr);
}
