#include "gpbench/pipeline.hpp"

int main(int argc, char** argv) {
    return gpbench::run_cli(argc, argv);
}
