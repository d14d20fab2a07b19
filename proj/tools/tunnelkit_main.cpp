#include "tunnelkit/cli.hpp"

int main(int argc, char** argv) { return tunnelkit::cli_main(argc, argv); }
