#include <string>
#include <vector>

#include "onedens/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return onedens::run_cli(args);
}
