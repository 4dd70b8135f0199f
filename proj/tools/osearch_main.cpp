#include <iostream>

#include "osearch/cli.hpp"

int main(int argc, char** argv) {
    return osearch::cli::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
