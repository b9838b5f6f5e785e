#include "qstates/cli.hpp"

int main(int argc, char** argv) { return qstates::cli::main(argc, argv); }
