#include "ffell/cli.hpp"

int main(int argc, char** argv) { return ffell::cli_main(argc, argv); }
