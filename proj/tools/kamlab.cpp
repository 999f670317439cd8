#include "kamlab_cli/cli.hpp"

int main(int argc, char** argv) { return kamlab::cli::run(argc, argv); }
