#include "lbl/cli.hpp"

int main(int argc, char **argv) { return lbl::cli::run(argc, argv); }
