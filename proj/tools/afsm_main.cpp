#include <iostream>

#include "afsm/cli.hpp"

int main(int argc, char** argv) {
    return afsm::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
