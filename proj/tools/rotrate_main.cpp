#include <iostream>
#include <string>
#include <vector>

#include "rotrate/cli.hpp"

int main(int argc, char** argv) {
    return rotrate::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
