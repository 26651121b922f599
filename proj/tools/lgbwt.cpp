#include <iostream>

#include "lgbwt/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    return lgbwt::cli::main_entry(argc, argv, std::cout, std::cerr);
}
