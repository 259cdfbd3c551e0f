#include "cli.hpp"

int main(int argc, char** argv) { return isl::cli::main_entry(argc, argv); }
