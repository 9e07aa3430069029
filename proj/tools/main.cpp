#include <beamcoh/cli.hpp>

int main(int argc, char** argv) {
    return beamcoh::run_cli(argc, argv);
}
