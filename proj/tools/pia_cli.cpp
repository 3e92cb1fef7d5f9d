#include <iostream>
#include <string>
#include <vector>

#include "pia/cli.hpp"

int main(int argc, char** argv) {
    return pia::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
