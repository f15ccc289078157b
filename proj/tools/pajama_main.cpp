#include "pajama/cli.hpp"

int main(int argc, char** argv) {
    return pajama::cli::run_cli(argc, argv);
}
