#include "conesurf/cli.hpp"

int main(int argc, char** argv) { return conesurf::cli::run(argc, argv); }
