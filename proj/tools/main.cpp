#include <string>
#include <vector>

#include "osgraph/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return osgraph::cli::run(args);
}
