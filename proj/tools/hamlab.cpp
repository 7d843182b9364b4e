#include "hamlab/cli.hpp"

int main(int argc, char** argv) { return hamlab::cli::main(argc, argv); }
