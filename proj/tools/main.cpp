#include "commands.hpp"

int main(int argc, char** argv) { return cluster::cli::run_cli(argc, argv); }
