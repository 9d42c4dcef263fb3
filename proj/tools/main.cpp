#include "cli.hpp"

int main(int argc, char **argv) { return gbp::cli::cli_main(argc, argv); }
