#include "cavharvest/cli.hpp"

int main(int argc, char** argv) {
    return cavharvest::run_cli(argc, argv);
}
