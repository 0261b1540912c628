#include <string>
#include <vector>

#include "sparsity/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sparsity::cli::run_command(args);
}
