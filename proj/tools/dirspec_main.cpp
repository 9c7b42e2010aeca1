#include <string>
#include <vector>

#include "dirspec/cli.hpp"

int main(int argc, char** argv) {
    return dirspec::parse_and_dispatch(std::vector<std::string>(argv, argv + argc));
}
