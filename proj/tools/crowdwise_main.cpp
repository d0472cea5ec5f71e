#include <string>
#include <vector>

#include "crowdwise/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return crowdwise::run_cli(std::move(args));
}
