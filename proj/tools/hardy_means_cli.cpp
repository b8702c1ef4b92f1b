#include "hardy_means/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return hardy_means::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
