#include "etapair/cli.hpp"

int main(int argc, char** argv) { return etapair::cli::main_entry(argc, argv); }
