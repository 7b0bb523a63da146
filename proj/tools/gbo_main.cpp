#include "gbo/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gbo::run_gbo_cli(std::move(args));
}
