#include "wigner_lab/cli.hpp"

int main(int argc, char** argv) { return wigner_lab::cli::run(argc, argv); }
