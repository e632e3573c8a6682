#include <iostream>
#include <variant>

#include "framediag/cli.hpp"

int main(int argc, char** argv) {
    auto parsed = framediag::cli::parse_command_line(argc, argv, std::cout, std::cerr);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    return framediag::cli::run_command(std::get<framediag::cli::RunConfig>(parsed), std::cout, std::cerr);
}
