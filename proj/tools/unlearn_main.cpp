#include "cure/cli/cli.hpp"

int main(int argc, char** argv) { return cure::cli::run(argc, argv); }
