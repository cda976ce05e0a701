#include <iostream>
#include <string>
#include <vector>

#include <qcolor/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qcolor::cli::run(std::move(args), std::cout, std::cerr);
}
