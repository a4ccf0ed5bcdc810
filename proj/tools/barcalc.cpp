#include "barcalc/cli.hpp"

int main(int argc, char** argv) { return barcalc::cli_main(argc, argv); }
