#include "lablet/cli.hpp"

int main(int argc, char** argv) {
    return lablet::cli_main(argc, argv);
}
