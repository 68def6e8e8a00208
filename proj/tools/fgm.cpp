#include "fgm/cli.hpp"

int main(int argc, char** argv) { return fgm::run_cli(argc, argv); }
