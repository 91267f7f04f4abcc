#include <iostream>
#include <string>
#include <vector>

#include <ensys/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ensys::dispatch(std::move(args), std::cout, std::cerr);
}
